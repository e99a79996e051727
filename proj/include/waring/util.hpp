#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace waring {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Domain failures carry a stable machine-readable name next to the prose;
// the CLI prints the name and exits 2.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const char* name, const std::string& what) {
    throw DomainError(name, what);
}

// Fixed-universe bit set sized at construction.  std::vector<bool> hides the
// word layout; closure rounds want word-level OR and popcount.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(u64 n) : n_(n), w_((n + 63) / 64, 0) {}

    u64 size() const { return n_; }
    bool test(u64 i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(u64 i) { w_[i >> 6] |= u64{1} << (i & 63); }
    void reset(u64 i) { w_[i >> 6] &= ~(u64{1} << (i & 63)); }

    u64 count() const {
        u64 c = 0;
        for (u64 w : w_) c += std::popcount(w);
        return c;
    }

    void or_with(const DynBitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }

    bool operator==(const DynBitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Visits set bits in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            u64 w = w_[wi];
            while (w) {
                unsigned b = std::countr_zero(w);
                f(u64(wi) * 64 + b);
                w &= w - 1;
            }
        }
    }

private:
    u64 n_ = 0;
    std::vector<u64> w_;
};

// FNV-1a, used for checkpoint integrity hashes; stable across platforms.
inline u64 fnv1a(const void* data, std::size_t len, u64 h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline u64 fnv1a(const std::string& s, u64 h = 0xcbf29ce484222325ull) {
    return fnv1a(s.data(), s.size(), h);
}

}  // namespace waring
