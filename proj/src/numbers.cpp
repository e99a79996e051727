#include "waring/numbers.hpp"

#include <numeric>

namespace waring {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<PrimePower> factor(u64 n) {
    std::vector<PrimePower> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        u32 e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::optional<PrimePower> as_prime_power(u64 q) {
    if (q < 2) return std::nullopt;
    auto f = factor(q);
    if (f.size() != 1) return std::nullopt;
    return f[0];
}

std::vector<u64> prime_powers_upto(u64 bound) {
    std::vector<u64> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (u64 p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        for (u64 m = p * p; m <= bound; m += p) composite[m] = true;
        for (u64 pe = p; pe <= bound; pe *= p) {
            out.push_back(pe);
            if (pe > bound / p) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 mod_pow(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 m) {
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) fail("DivisionByZero", "element not invertible mod " + std::to_string(m));
    old_s %= static_cast<i64>(m);
    if (old_s < 0) old_s += static_cast<i64>(m);
    return static_cast<u64>(old_s);
}

u64 crt(const std::vector<u64>& r, const std::vector<u64>& m) {
    u64 x = 0, mod = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        // solve x + mod*t = r[i] (mod m[i])
        u64 t = mul_mod(((r[i] + m[i]) - x % m[i]) % m[i], mod_inv(mod % m[i], m[i]), m[i]);
        x += mod * t;
        mod *= m[i];
    }
    return x;
}

u64 radical_of(u64 n) {
    u64 r = 1;
    for (auto& pp : factor(n)) r *= pp.p;
    return r;
}

}  // namespace waring
