#include "waring/poly.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace waring {

void p_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly p_add(const FieldCtx& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    p_trim(a);
    return a;
}

Poly p_neg(const FieldCtx& F, Poly a) {
    for (auto& c : a) c = F.neg(c);
    return a;
}

Poly p_sub(const FieldCtx& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    p_trim(a);
    return a;
}

Poly p_scale(const FieldCtx& F, Poly a, u32 c) {
    if (c == 0) return {};
    for (auto& x : a) x = F.mul(x, c);
    p_trim(a);
    return a;
}

Poly p_mul(const FieldCtx& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    p_trim(r);
    return r;
}

Poly p_powu(const FieldCtx& F, Poly a, u64 e) {
    Poly r{1};
    while (e) {
        if (e & 1) r = p_mul(F, r, a);
        a = p_mul(F, a, a);
        e >>= 1;
    }
    return r;
}

Poly p_monic(const FieldCtx& F, Poly a) {
    if (a.empty() || a.back() == 1) return a;
    u32 c = F.inv(a.back());
    return p_scale(F, std::move(a), c);
}

std::pair<Poly, Poly> p_divmod(const FieldCtx& F, Poly a, const Poly& b) {
    if (b.empty()) fail("DivisionByZero", "polynomial division by zero");
    if (a.size() < b.size()) return {{}, std::move(a)};
    Poly q(a.size() - b.size() + 1, 0);
    u32 linv = F.inv(b.back());
    for (std::size_t i = a.size(); i-- >= b.size();) {
        u32 c = F.mul(a[i], linv);
        if (c) {
            q[i - b.size() + 1] = c;
            std::size_t off = i - (b.size() - 1);
            for (std::size_t j = 0; j < b.size(); ++j)
                a[off + j] = F.sub(a[off + j], F.mul(c, b[j]));
        }
    }
    p_trim(a);
    p_trim(q);
    return {std::move(q), std::move(a)};
}

Poly p_mod(const FieldCtx& F, Poly a, const Poly& b) {
    return p_divmod(F, std::move(a), b).second;
}

Poly p_div_exact(const FieldCtx& F, const Poly& a, const Poly& b) {
    auto [q, r] = p_divmod(F, a, b);
    if (!r.empty()) fail("InexactDivision", "expected exact polynomial division");
    return q;
}

Poly p_gcd(const FieldCtx& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = p_mod(F, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return p_monic(F, std::move(a));
}

XgcdResult p_xgcd(const FieldCtx& F, const Poly& x, const Poly& y) {
    Poly r0 = x, r1 = y;
    Poly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r2] = p_divmod(F, std::move(r0), r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly s2 = p_sub(F, std::move(s0), p_mul(F, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = p_sub(F, std::move(t0), p_mul(F, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty() && r0.back() != 1) {
        u32 c = F.inv(r0.back());
        r0 = p_scale(F, std::move(r0), c);
        s0 = p_scale(F, std::move(s0), c);
        t0 = p_scale(F, std::move(t0), c);
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

Poly p_invmod(const FieldCtx& F, const Poly& a, const Poly& m) {
    XgcdResult e = p_xgcd(F, p_mod(F, a, m), m);
    if (p_deg(e.g) != 0) fail("DivisionByZero", "element has no inverse modulo the given polynomial");
    return p_mod(F, std::move(e.a), m);
}

Poly p_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& m) {
    return p_mod(F, p_mul(F, a, b), m);
}

Poly p_powmod(const FieldCtx& F, Poly a, u64 e, const Poly& m) {
    Poly r{1};
    a = p_mod(F, std::move(a), m);
    while (e) {
        if (e & 1) r = p_mulmod(F, r, a, m);
        a = p_mulmod(F, a, a, m);
        e >>= 1;
    }
    return r;
}

u32 p_eval(const FieldCtx& F, const Poly& a, u32 x) {
    u32 acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

Poly p_derivative(const FieldCtx& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(F.scalar(u64(i)), a[i]);
    p_trim(d);
    return d;
}

namespace {

// x^(q^reps) mod f by repeated q-power maps
Poly frobenius_pow(const FieldCtx& F, const Poly& f, u32 reps) {
    Poly h{0, 1};
    for (u32 i = 0; i < reps; ++i) h = p_powmod(F, std::move(h), F.q, f);
    return h;
}

}  // namespace

bool p_irreducible(const FieldCtx& F, const Poly& f) {
    int n = p_deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly x{0, 1};
    if (frobenius_pow(F, f, u32(n)) != p_mod(F, x, f)) return false;
    u32 m = u32(n);
    for (u32 r = 2; r * r <= m; ++r) {
        if (m % r) continue;
        while (m % r == 0) m /= r;
        Poly h = p_sub(F, frobenius_pow(F, f, u32(n) / r), x);
        if (p_deg(p_gcd(F, std::move(h), f)) != 0) return false;
    }
    if (m > 1) {
        Poly h = p_sub(F, frobenius_pow(F, f, u32(n) / m), x);
        if (p_deg(p_gcd(F, std::move(h), f)) != 0) return false;
    }
    return true;
}

namespace {

// coefficient-wise p-th root; valid when a only has exponents divisible by p
Poly poly_pth_root(const FieldCtx& F, const Poly& a) {
    Poly r;
    u64 root_exp = F.q / F.p;  // c^(p^(s-1)) inverts c -> c^p
    for (std::size_t i = 0; i < a.size(); i += F.p) {
        u32 c = a[i];
        r.push_back(root_exp == 1 ? c : F.pow(c, root_exp));
    }
    p_trim(r);
    return r;
}

void squarefree_parts(const FieldCtx& F, Poly f, u32 outer_mult,
                      std::vector<std::pair<Poly, u32>>& out) {
    f = p_monic(F, std::move(f));
    Poly d = p_derivative(F, f);
    if (p_is_zero(d)) {
        squarefree_parts(F, poly_pth_root(F, f), outer_mult * F.p, out);
        return;
    }
    Poly c = p_gcd(F, f, d);
    Poly w = p_div_exact(F, f, c);
    u32 i = 1;
    while (p_deg(w) > 0) {
        Poly y = p_gcd(F, w, c);
        Poly z = p_div_exact(F, w, y);
        if (p_deg(z) > 0) out.emplace_back(std::move(z), i * outer_mult);
        c = p_div_exact(F, c, y);
        w = std::move(y);
        ++i;
    }
    // the leftover c is a p-th power, so its derivative vanishes and the
    // zero-derivative branch above supplies the factor of p
    if (p_deg(c) > 0) squarefree_parts(F, std::move(c), outer_mult, out);
}

// splits a squarefree product of degree-d irreducibles
void equal_degree_split(const FieldCtx& F, Poly h, u32 d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
    u32 n = u32(p_deg(h));
    if (n == d) {
        out.push_back(p_monic(F, std::move(h)));
        return;
    }
    while (true) {
        Poly a(n, 0);
        for (auto& c : a) c = u32(rng() % F.q);
        p_trim(a);
        if (p_deg(a) < 1) continue;
        Poly b;
        if (F.p == 2) {
            // sum of 2^i-th power maps; lands in F_2 on each degree-d factor
            Poly t = p_mod(F, a, h);
            b = t;
            u64 reps = u64(F.s) * d;
            for (u64 i = 1; i < reps; ++i) {
                t = p_mulmod(F, t, t, h);
                b = p_add(F, std::move(b), t);
            }
        } else {
            u64 e = 1;
            for (u32 i = 0; i < d; ++i) e *= F.q;
            b = p_powmod(F, a, (e - 1) / 2, h);
            b = p_sub(F, std::move(b), Poly{1});
        }
        Poly g = p_gcd(F, b, h);
        u32 gd = u32(std::max(p_deg(g), 0));
        if (gd == 0 || gd == n) continue;
        Poly rest = p_div_exact(F, h, g);
        equal_degree_split(F, std::move(g), d, rng, out);
        equal_degree_split(F, std::move(rest), d, rng, out);
        return;
    }
}

bool factor_order(const PolyFactor& a, const PolyFactor& b) {
    if (a.base.size() != b.base.size()) return a.base.size() < b.base.size();
    for (std::size_t i = a.base.size(); i-- > 0;)
        if (a.base[i] != b.base[i]) return a.base[i] < b.base[i];
    return a.mult < b.mult;
}

}  // namespace

std::vector<PolyFactor> p_factorize(const FieldCtx& F, Poly f, u64 seed) {
    if (p_deg(f) < 1) fail("DivisionByZero", "cannot factor a constant polynomial");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, u32>> sqfree;
    squarefree_parts(F, std::move(f), 1, sqfree);
    std::vector<PolyFactor> out;
    for (auto& [part, mult] : sqfree) {
        // distinct-degree sieve on each squarefree part
        Poly g = part;
        Poly h{0, 1};
        u32 d = 0;
        while (p_deg(g) > 0) {
            ++d;
            if (2 * d > u32(p_deg(g))) {
                out.push_back({p_monic(F, std::move(g)), mult});
                break;
            }
            h = p_powmod(F, std::move(h), F.q, g);
            Poly split = p_gcd(F, p_sub(F, h, Poly{0, 1}), g);
            if (p_deg(split) > 0) {
                std::vector<Poly> pieces;
                equal_degree_split(F, split, d, rng, pieces);
                for (auto& piece : pieces) out.push_back({std::move(piece), mult});
                g = p_div_exact(F, g, split);
                h = p_mod(F, std::move(h), g);
            }
        }
    }
    std::sort(out.begin(), out.end(), factor_order);
    return out;
}

Poly p_crt(const FieldCtx& F, const std::vector<Poly>& residues, const std::vector<Poly>& moduli) {
    if (residues.size() != moduli.size() || moduli.empty())
        fail("ParseError", "mismatched residue and modulus lists");
    Poly x = p_mod(F, residues[0], moduli[0]);
    Poly m = moduli[0];
    for (std::size_t i = 1; i < moduli.size(); ++i) {
        // x + m * t with t = (r_i - x) / m mod m_i
        Poly diff = p_sub(F, residues[i], x);
        Poly t = p_mulmod(F, p_mod(F, diff, moduli[i]), p_invmod(F, m, moduli[i]), moduli[i]);
        x = p_add(F, std::move(x), p_mul(F, m, t));
        m = p_mul(F, m, moduli[i]);
    }
    return p_mod(F, std::move(x), m);
}

std::string p_format(const Poly& a) {
    if (a.empty()) return "0";
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += '+';
        if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
        if (i >= 1) {
            s += 'x';
            if (i >= 2) s += '^' + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

Poly p_parse(const FieldCtx& F, const std::string& text) {
    Poly out;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(u8(text[i]))) ++i; };
    bool any = false;
    while (true) {
        skip_ws();
        bool negate = false;
        while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') negate = !negate;
            ++i;
            skip_ws();
        }
        if (i >= text.size()) break;
        u64 coef = 1;
        bool saw_coef = false;
        if (std::isdigit(u8(text[i]))) {
            coef = 0;
            while (i < text.size() && std::isdigit(u8(text[i]))) {
                coef = coef * 10 + u64(text[i] - '0');
                if (coef >= (u64(1) << 40)) fail("ParseError", "coefficient out of range");
                ++i;
            }
            saw_coef = true;
        }
        u64 exp = 0;
        skip_ws();
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit(u8(text[i]))) fail("ParseError", "missing exponent");
                exp = 0;
                while (i < text.size() && std::isdigit(u8(text[i]))) {
                    exp = exp * 10 + u64(text[i] - '0');
                    if (exp > 4096) fail("ParseError", "exponent out of range");
                    ++i;
                }
            }
        } else if (!saw_coef) {
            fail("ParseError", "unexpected character in polynomial");
        }
        if (coef >= F.q) fail("ParseError", "coefficient code exceeds field size");
        u32 c = u32(coef);
        if (negate) c = F.neg(c);
        if (out.size() <= exp) out.resize(exp + 1, 0);
        out[exp] = F.add(out[exp], c);
        any = true;
    }
    if (!any) fail("ParseError", "empty polynomial");
    p_trim(out);
    return out;
}

}  // namespace waring
