#include "waring/hensel.hpp"

#include <algorithm>
#include <numeric>

#include "waring/gamma.hpp"
#include "waring/numbers.hpp"

namespace waring {

Poly tp_eval(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& modulus) {
    Poly acc;
    for (std::size_t i = Q.size(); i-- > 0;) {
        acc = p_mod(F, p_add(F, p_mul(F, acc, g), Q[i]), modulus);
    }
    return acc;
}

TPoly tp_derivative(const FieldCtx& F, const TPoly& Q) {
    TPoly d;
    if (Q.size() <= 1) return d;
    d.resize(Q.size() - 1);
    for (std::size_t i = 1; i < Q.size(); ++i) {
        Poly c = Q[i];
        u32 mult = u32(i % F.p);
        for (auto& x : c) x = F.mul(mult, x);
        p_trim(c);
        d[i - 1] = std::move(c);
    }
    while (!d.empty() && d.back().empty()) d.pop_back();
    return d;
}

TaylorSplit taylor_split(const FieldCtx& F, const Poly& p) {
    // binomial table mod the characteristic
    std::size_t n = p.size();
    std::vector<std::vector<u32>> binom(n);
    for (std::size_t r = 0; r < n; ++r) {
        binom[r].assign(r + 1, 1);
        for (std::size_t c = 1; c < r; ++c)
            binom[r][c] = (binom[r - 1][c - 1] + binom[r - 1][c]) % F.p;
    }
    // row j of the expansion of p(x+y) by powers of y
    std::vector<Poly> rows(n);
    for (std::size_t j = 0; j < n; ++j) {
        Poly row;
        for (std::size_t deg = j; deg < n; ++deg) {
            u32 c = F.mul(binom[deg][j], p[deg]);
            if (row.size() <= deg - j) row.resize(deg - j + 1, 0);
            row[deg - j] = c;
        }
        p_trim(row);
        rows[j] = std::move(row);
    }
    TaylorSplit out;
    out.value = p;
    p_trim(out.value);
    out.derivative = p_derivative(F, p);
    if (!(rows.empty() ? out.value.empty() : rows[0] == out.value) ||
        (rows.size() > 1 ? rows[1] != out.derivative : !out.derivative.empty()))
        fail("TaylorMismatch", "expansion disagrees with value/derivative rows");
    for (std::size_t j = 2; j < rows.size(); ++j) out.tail.push_back(std::move(rows[j]));
    while (!out.tail.empty() && out.tail.back().empty()) out.tail.pop_back();
    return out;
}

u32 taylor_eval_tail(const FieldCtx& F, const TaylorSplit& t, u32 x, u32 y) {
    u32 acc = 0;
    for (std::size_t j = t.tail.size(); j-- > 0;)
        acc = F.add(F.mul(acc, y), p_eval(F, t.tail[j], x));
    return acc;
}

u32 f_adic_valuation(const FieldCtx& F, Poly g, const Poly& f) {
    if (p_deg(f) < 1) fail("ParseError", "valuation needs a nonconstant modulus");
    if (g.empty()) return VAL_INF;
    u32 v = 0;
    while (true) {
        auto [q, r] = p_divmod(F, std::move(g), f);
        if (!r.empty()) return v;
        ++v;
        g = std::move(q);
        if (p_deg(g) <= 0) return v;  // nonzero constant cannot absorb another factor
    }
}

WeakLift hensel_weak(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& f,
                     u32 n, u32 m) {
    if (p_deg(f) < 1) fail("ParseError", "lift modulus must be nonconstant");
    if (m < 1 || m > n) fail("HypothesisViolated", "need 1 <= m <= n");
    Poly fm = p_monic(F, f);
    Poly f_n = p_powu(F, fm, n);
    Poly f_m = p_powu(F, fm, m);
    Poly f_nm = p_mul(F, f_n, f_m);

    Poly Qg = tp_eval(F, Q, g, f_nm);
    auto [h, rem] = p_divmod(F, Qg, f_n);
    if (!rem.empty()) fail("NotARoot", "g is not a root of Q modulo f^n");

    TPoly Qd = tp_derivative(F, Q);
    Poly Qpg = tp_eval(F, Qd, g, f_nm);
    if (p_mod(F, Qpg, fm).empty()) fail("DerivativeNotUnit", "Q'(g) vanishes modulo f");

    // route one: correction term t = -h / Q'(g) mod f^m, lift g + f^n t
    Poly u = p_invmod(F, Qpg, f_m);
    Poly t = p_neg(F, p_mulmod(F, p_mod(F, h, f_m), u, f_m));
    Poly g2 = p_mod(F, p_add(F, g, p_mul(F, f_n, t)), f_nm);

    // route two: full Newton step with the inverse taken mod f^(n+m)
    Poly uN = p_invmod(F, Qpg, f_nm);
    Poly g2b = p_mod(F, p_sub(F, g, p_mul(F, Qg, uN)), f_nm);
    if (g2 != g2b) fail("LiftMismatch", "independent lift routes disagree");

    if (!tp_eval(F, Q, g2, f_nm).empty()) fail("LiftMismatch", "lift is not a root mod f^(n+m)");
    if (!p_mod(F, p_sub(F, g2, g), f_n).empty()) fail("LiftMismatch", "lift moved below f^n");
    return {std::move(g2)};
}

namespace {

// exact (unreduced) evaluation of Q at g
Poly tp_eval_exact(const FieldCtx& F, const TPoly& Q, const Poly& g) {
    Poly acc;
    for (std::size_t i = Q.size(); i-- > 0;) acc = p_add(F, p_mul(F, acc, g), Q[i]);
    return acc;
}

}  // namespace

StrongLift hensel_strong(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& f, u32 n) {
    if (p_deg(f) < 1) fail("ParseError", "lift modulus must be nonconstant");
    Poly fm = p_monic(F, f);
    Poly Qg = tp_eval_exact(F, Q, g);
    Poly Qpg = tp_eval_exact(F, tp_derivative(F, Q), g);
    u32 m = f_adic_valuation(F, Qpg, fm);
    if (m == VAL_INF || n <= 2 * m) fail("HypothesisViolated", "need n > 2*nu(Q'(g))");
    u32 vQ = f_adic_valuation(F, Qg, fm);
    if (vQ != VAL_INF && vQ < n) fail("NotARoot", "nu(Q(g)) < n");

    Poly g2 = g;
    if (vQ != VAL_INF) {
        Poly h1 = p_div_exact(F, Qg, p_powu(F, fm, n));
        Poly h2 = p_div_exact(F, Qpg, p_powu(F, fm, m));
        Poly f_m1 = p_powu(F, fm, m + 1);
        Poly w = p_mulmod(F, p_mod(F, h1, f_m1), p_invmod(F, h2, f_m1), f_m1);
        g2 = p_sub(F, g2, p_mul(F, p_powu(F, fm, n - m), w));
    }
    g2 = p_mod(F, std::move(g2), p_powu(F, fm, n + 1));

    u32 v1 = f_adic_valuation(F, tp_eval_exact(F, Q, g2), fm);
    if (v1 != VAL_INF && v1 < n + 1) fail("LiftMismatch", "lift gained no precision");
    u32 v2 = f_adic_valuation(F, p_sub(F, g2, g), fm);
    if (v2 != VAL_INF && v2 < n - m) fail("LiftMismatch", "lift moved below f^(n-m)");
    u32 v3 = f_adic_valuation(F, tp_eval_exact(F, tp_derivative(F, Q), g2), fm);
    if (v3 != m) fail("LiftMismatch", "derivative valuation drifted");
    return {std::move(g2), m};
}

std::vector<Poly> lift_power_sum(const FieldCtx& F, const Poly& f, u64 k, const Poly& target,
                                 u32 i, std::vector<Poly> base) {
    if (k == 0 || k % F.p == 0) fail("CharDividesK", "exponent shares a factor with the characteristic");
    if (i < 1) fail("ParseError", "target precision must be at least 1");
    Poly fm = p_monic(F, f);
    if (p_deg(fm) < 1) fail("ParseError", "lift modulus must be nonconstant");
    Poly f_i = p_powu(F, fm, i);
    Poly tgt = p_mod(F, target, f_i);

    Poly sum0;
    for (const auto& b : base) sum0 = p_add(F, std::move(sum0), p_powmod(F, b, k, fm));
    if (sum0 != p_mod(F, tgt, fm))
        fail("BaseNotARepresentation", "base witnesses do not sum to the target modulo f");

    std::vector<Poly> wit;
    for (auto& b : base) {
        Poly r = p_mod(F, std::move(b), fm);
        if (!r.empty()) wit.push_back(std::move(r));
    }
    if (wit.empty()) {
        // every base witness vanished, so the target is 0 mod f; reseed with
        // constants whose k-th powers cancel
        u64 d = std::gcd(k, u64(F.q - 1));
        if (k % 2 == 1) {
            wit.push_back(Poly{1});
            wit.push_back(Poly{F.neg(1)});
        } else if (F.q % 2 == 1 && ((F.q - 1) / 2) % d == 0) {
            // -1 = generator^((q-1)/2) is a k-th power; solve k*y = (q-1)/2
            // for one preimage
            u64 grp = F.q - 1;
            u64 y = mul_mod((grp / 2) / d, mod_inv((k / d) % (grp / d), grp / d), grp / d);
            u32 c = F.antilog[y];
            if (F.pow(c, k) != F.neg(1)) fail("LiftMismatch", "bad -1 preimage");
            wit.push_back(Poly{1});
            wit.push_back(Poly{c});
        } else {
            wit.push_back(Poly{1});
            for (u32 w : decompose_in_field(F, k, F.neg(1)))
                if (w) wit.push_back(Poly{w});
        }
    }

    u32 lvl = 1;
    while (lvl < i) {
        u32 nxt = std::min(2 * lvl, i);
        Poly f_nxt = p_powu(F, fm, nxt);
        Poly rest;
        for (std::size_t j = 1; j < wit.size(); ++j)
            rest = p_add(F, std::move(rest), p_powmod(F, wit[j], k, f_nxt));
        TPoly Q(std::size_t(k) + 1);
        Q[0] = p_mod(F, p_sub(F, rest, tgt), f_nxt);
        Q[k] = Poly{1};
        WeakLift step = hensel_weak(F, Q, wit[0], fm, lvl, nxt - lvl);
        wit[0] = std::move(step.lifted);
        lvl = nxt;
    }

    Poly total;
    for (const auto& w : wit) total = p_add(F, std::move(total), p_powmod(F, w, k, f_i));
    if (total != tgt) fail("LiftMismatch", "lifted witnesses fail to reproduce the target");
    return wit;
}

}  // namespace waring
