#pragma once

#include <vector>

#include "waring/poly.hpp"

namespace waring {

// Polynomial in an outer variable t whose coefficients live in F_q[x];
// entry i is the coefficient of t^i.
using TPoly = std::vector<Poly>;

Poly tp_eval(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& modulus);
TPoly tp_derivative(const FieldCtx& F, const TPoly& Q);

// Splits p(x+y) as p(x) + y*p'(x) + y^2*p2(x,y). The tail rows give p2 by
// powers of y: p2(x,y) = sum_j y^j * tail[j](x). Construction re-derives the
// first two rows and refuses to return if they disagree with p and p'.
struct TaylorSplit {
    Poly value;
    Poly derivative;
    std::vector<Poly> tail;
};
TaylorSplit taylor_split(const FieldCtx& F, const Poly& p);
u32 taylor_eval_tail(const FieldCtx& F, const TaylorSplit& t, u32 x, u32 y);

// f-adic valuation of g; VAL_INF for g = 0.
inline constexpr u32 VAL_INF = 0xFFFFFFFFu;
u32 f_adic_valuation(const FieldCtx& F, Poly g, const Poly& f);

// Given a root g of Q modulo f^n, produces the unique root modulo f^(n+m)
// that is congruent to g modulo f^n. Requires 1 <= m <= n and Q'(g) a unit
// modulo f. The result is computed twice along independent routes and both
// must agree before it is returned.
struct WeakLift {
    Poly lifted;  // reduced modulo f^(n+m)
};
WeakLift hensel_weak(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& f,
                     u32 n, u32 m);

// Lift allowing Q'(g) to vanish to order m = nu(Q'(g)) as long as n > 2m:
// from nu(Q(g)) >= n produces g2 with nu(Q(g2)) >= n+1, g2 = g mod f^(n-m),
// and nu(Q'(g2)) = m. All three facts are checked exactly before returning.
struct StrongLift {
    Poly lifted;  // reduced modulo f^(n+1)
    u32 derivative_valuation;
};
StrongLift hensel_strong(const FieldCtx& F, const TPoly& Q, const Poly& g, const Poly& f, u32 n);

// Given witnesses B_j with sum B_j^k = target mod f, produces witnesses for
// target mod f^i. Zero residues are dropped; when every base witness vanishes
// the list is reseeded with constants summing to zero (1 and -1 when possible,
// otherwise 1 together with a k-th power expansion of -1), which can grow the
// witness count by one.
std::vector<Poly> lift_power_sum(const FieldCtx& F, const Poly& f, u64 k, const Poly& target,
                                 u32 i, std::vector<Poly> base);

}  // namespace waring
