#include "waring/field.hpp"

#include <cctype>
#include <cstdlib>

#include "waring/numbers.hpp"

namespace waring {
namespace {

// --- dense polynomials over F_p, coefficients constant-first -------------

using Pc = std::vector<u32>;

void pc_trim(Pc& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Pc pc_mulmod(const Pc& a, const Pc& b, const Pc& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] += u64(a[i]) * b[j];
    }
    for (auto& c : t) c %= p;
    // f is monic: subtract c * f * x^(i - deg f) from the top down
    std::size_t df = f.size() - 1;
    for (std::size_t i = t.size(); i-- > df;) {
        u64 c = t[i] % p;
        if (!c) continue;
        for (std::size_t j = 0; j <= df; ++j) {
            u64 sub = c * f[j] % p;
            std::size_t k = i - df + j;
            t[k] = (t[k] + p * p - sub) % p;
        }
    }
    std::size_t keep = t.size() < df ? t.size() : df;
    Pc r(keep);
    for (std::size_t i = 0; i < keep; ++i) r[i] = u32(t[i] % p);
    pc_trim(r);
    return r;
}

Pc pc_powmod(Pc a, u64 e, const Pc& f, u64 p) {
    Pc r = {1};
    while (e) {
        if (e & 1) r = pc_mulmod(r, a, f, p);
        a = pc_mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

// x^(p^k) mod f by k-fold exponentiation by p.
Pc pc_frob(const Pc& f, u64 p, u32 k) {
    Pc x = {0, 1};
    Pc r = x;
    for (u32 i = 0; i < k; ++i) r = pc_powmod(r, p, f, p);
    return r;
}

Pc pc_sub(Pc a, const Pc& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = u32((a[i] + p - b[i]) % p);
    pc_trim(a);
    return a;
}

Pc pc_mod(Pc a, const Pc& f, u64 p) {
    std::size_t df = f.size() - 1;
    while (a.size() > df) {
        u64 c = a.back();
        std::size_t i = a.size() - 1;
        if (c) {
            for (std::size_t j = 0; j <= df; ++j)
                a[i - df + j] = u32((a[i - df + j] + p * p - c * f[j] % p) % p);
        }
        a.pop_back();
        pc_trim(a);
        if (a.size() <= df) break;
    }
    pc_trim(a);
    return a;
}

Pc pc_gcd(Pc a, Pc b, u64 p) {
    pc_trim(a);
    pc_trim(b);
    while (!b.empty()) {
        // make b monic for the reduction
        u64 lead = b.back();
        if (lead != 1) {
            u64 li = mod_inv(lead, p);
            for (auto& c : b) c = u32(c * li % p);
        }
        Pc r = pc_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool pc_is_one(const Pc& a) { return a.size() == 1 && a[0] == 1; }

// Deterministic irreducibility for monic f of degree s over F_p:
// x^(p^s) = x mod f, and gcd(x^(p^(s/r)) - x, f) = 1 for prime r | s.
bool irreducible(const Pc& f, u64 p) {
    u32 s = u32(f.size() - 1);
    if (s == 1) return true;
    Pc x = {0, 1};
    if (pc_frob(f, p, s) != x) return false;
    for (auto& pp : factor(s)) {
        Pc h = pc_sub(pc_frob(f, p, s / u32(pp.p)), x, p);
        if (!pc_is_one(pc_gcd(f, h, p))) return false;
    }
    return true;
}

u32 pc_code(const Pc& a, u64 p, u32 s) {
    u64 code = 0, m = 1;
    for (u32 i = 0; i < s; ++i) {
        code += (i < a.size() ? a[i] : 0) * m;
        m *= p;
    }
    return u32(code);
}

Pc code_pc(u32 code, u64 p) {
    Pc a;
    while (code) {
        a.push_back(code % u32(p));
        code /= u32(p);
    }
    return a;
}

// --- bit-packed variant for p = 2 ----------------------------------------

u64 b_mulmod(u64 a, u64 b, u64 f, u32 s) {
    u64 t = 0;
    while (b) {
        if (b & 1) t ^= a;
        a <<= 1;
        b >>= 1;
    }
    for (u32 i = 2 * s - 2 + 1; i-- > s;)
        if (t >> i & 1) t ^= f << (i - s);
    return t;
}

u64 b_powmod(u64 a, u64 e, u64 f, u32 s) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = b_mulmod(r, a, f, s);
        a = b_mulmod(a, a, f, s);
        e >>= 1;
    }
    return r;
}

}  // namespace

u64 size_cap_default() {
    if (const char* env = std::getenv("WARING_SIZE_CAP")) {
        u64 v = std::strtoull(env, nullptr, 10);
        if (v >= 2) return v;
    }
    return u64{1} << 24;
}

FieldCtx build_field(u64 p, u32 s, u64 cap) {
    if (!is_prime(p)) fail("NonPrimeP", "p = " + std::to_string(p) + " is not prime");
    if (s < 1) fail("NonPrimeP", "extension degree must be at least 1");
    if (cap == 0) cap = size_cap_default();
    u64 q = 1;
    for (u32 i = 0; i < s; ++i) {
        if (q > cap / p)
            fail("SizeCapExceeded", "q = " + std::to_string(p) + "^" + std::to_string(s) +
                                        " exceeds cap " + std::to_string(cap));
        q *= p;
    }

    FieldCtx F;
    F.p = p;
    F.s = s;
    F.q = q;

    // canonical modulus: scan candidate low coefficients in base-p order
    {
        Pc f;
        for (u64 m = 0;; ++m) {
            f = code_pc(u32(m), p);
            f.resize(s + 1, 0);
            f[s] = 1;
            if (irreducible(f, p)) break;
        }
        F.modulus.assign(f.begin(), f.end());
    }

    // canonical generator: smallest code of order q-1
    std::vector<u64> ord_primes;
    for (auto& pp : factor(q - 1)) ord_primes.push_back(pp.p);
    u64 fbits = 0;
    if (p == 2)
        for (u32 i = 0; i <= s; ++i) fbits |= u64(F.modulus[i]) << i;
    auto elem_pow = [&](u32 a, u64 e) -> u32 {
        if (s == 1) return u32(mod_pow(a, e, p));
        if (p == 2) return u32(b_powmod(a, e, fbits, s));
        Pc r = pc_powmod(code_pc(a, p), e, F.modulus, p);
        return pc_code(r, p, s);
    };
    u32 g = 0;
    for (u32 a = 1; a < q; ++a) {
        bool ok = true;
        for (u64 r : ord_primes)
            if (elem_pow(a, (q - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = a;
            break;
        }
    }
    F.generator = g;

    // tables from one generator walk
    F.log_tab.assign(q, FieldCtx::LOG_NONE);
    F.antilog.assign(2 * (q - 1), 0);
    if (s == 1) {
        u64 cur = 1;
        for (u64 e = 0; e < q - 1; ++e) {
            F.antilog[e] = u32(cur);
            F.log_tab[cur] = u32(e);
            cur = cur * g % p;
        }
    } else if (p == 2) {
        u64 cur = 1;
        for (u64 e = 0; e < q - 1; ++e) {
            F.antilog[e] = u32(cur);
            F.log_tab[cur] = u32(e);
            cur = b_mulmod(cur, g, fbits, s);
        }
    } else {
        Pc cur = {1};
        Pc gv = code_pc(g, p);
        for (u64 e = 0; e < q - 1; ++e) {
            u32 c = pc_code(cur, p, s);
            F.antilog[e] = c;
            F.log_tab[c] = u32(e);
            cur = pc_mulmod(cur, gv, F.modulus, p);
        }
    }
    for (u64 e = 0; e < q - 1; ++e) F.antilog[q - 1 + e] = F.antilog[e];

    // trace of basis monomials t^i as sums of conjugates
    F.trace_basis.assign(s, 0);
    if (s == 1) {
        F.trace_basis[0] = 1;
    } else {
        u32 lt = F.log_tab[u32(p)];  // t has code p
        for (u32 i = 0; i < s; ++i) {
            u32 acc = 0;
            u64 conj = u64(lt) * i % (q - 1);
            for (u32 j = 0; j < s; ++j) {
                acc = F.add(acc, F.antilog[conj]);
                conj = conj * p % (q - 1);
            }
            if (acc >= p) fail("NonPrimeP", "trace fell outside the prime subfield");
            F.trace_basis[i] = acc;
        }
    }
    return F;
}

FieldCtx build_field_q(u64 q, u64 cap) {
    auto pp = as_prime_power(q);
    if (!pp) fail("NonPrimePowerQ", "q = " + std::to_string(q) + " is not a prime power");
    return build_field(pp->p, pp->e, cap);
}

u32 parse_element(const FieldCtx& F, const std::string& text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i == text.size()) fail("ParseError", "empty element");

    bool has_g = text.find('g') != std::string::npos;
    if (!has_g) {
        u64 v = 0;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            ++i;
        }
        skip();
        if (i != text.size() || start == i)
            fail("ParseError", "bad element literal '" + text + "'");
        if (v >= F.q) fail("ParseError", "code " + std::to_string(v) + " out of range for q=" +
                                             std::to_string(F.q));
        return u32(v);
    }

    u32 acc = 0;
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) {
            if (first) fail("ParseError", "bad element literal '" + text + "'");
            break;
        }
        bool negate = false;
        if (text[i] == '+' || text[i] == '-') {
            negate = text[i] == '-';
            ++i;
            skip();
        } else if (!first) {
            fail("ParseError", "expected + or - in '" + text + "'");
        }
        u64 coef = 1;
        bool saw_digits = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = 0;
            saw_digits = true;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                coef = coef * 10 + (text[i++] - '0');
        }
        skip();
        u64 exp = 0;
        if (i < text.size() && text[i] == 'g') {
            ++i;
            exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    fail("ParseError", "bad exponent in '" + text + "'");
                exp = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    exp = exp * 10 + (text[i++] - '0');
            }
        } else if (!saw_digits) {
            fail("ParseError", "bad term in '" + text + "'");
        }
        u32 term = F.mul(F.scalar(coef), F.pow(F.generator, exp));
        acc = F.add(acc, negate ? F.neg(term) : term);
        first = false;
    }
    return acc;
}

std::string format_element(u32 code) { return std::to_string(code); }

}  // namespace waring
