#pragma once

#include <string>
#include <utility>
#include <vector>

#include "waring/field.hpp"

namespace waring {

// Dense univariate polynomial over a FieldCtx. Coefficients are element codes,
// constant term first, and a normalized value never has a trailing zero (so the
// zero polynomial is the empty vector).
using Poly = std::vector<u32>;

void p_trim(Poly& a);
inline bool p_is_zero(const Poly& a) { return a.empty(); }
inline int p_deg(const Poly& a) { return int(a.size()) - 1; }
inline u32 p_lead(const Poly& a) { return a.empty() ? 0 : a.back(); }
inline Poly p_const(u32 c) { return c ? Poly{c} : Poly{}; }

Poly p_add(const FieldCtx& F, Poly a, const Poly& b);
Poly p_sub(const FieldCtx& F, Poly a, const Poly& b);
Poly p_neg(const FieldCtx& F, Poly a);
Poly p_scale(const FieldCtx& F, Poly a, u32 c);
Poly p_mul(const FieldCtx& F, const Poly& a, const Poly& b);
Poly p_powu(const FieldCtx& F, Poly a, u64 e);
Poly p_monic(const FieldCtx& F, Poly a);

// quotient and remainder; the divisor may have any nonzero leading coefficient
std::pair<Poly, Poly> p_divmod(const FieldCtx& F, Poly a, const Poly& b);
Poly p_mod(const FieldCtx& F, Poly a, const Poly& b);
Poly p_div_exact(const FieldCtx& F, const Poly& a, const Poly& b);

Poly p_gcd(const FieldCtx& F, Poly a, Poly b);  // monic unless zero

struct XgcdResult {
    Poly g, a, b;  // a*x + b*y = g with g monic (or zero)
};
XgcdResult p_xgcd(const FieldCtx& F, const Poly& x, const Poly& y);

Poly p_invmod(const FieldCtx& F, const Poly& a, const Poly& m);
Poly p_mulmod(const FieldCtx& F, const Poly& a, const Poly& b, const Poly& m);
Poly p_powmod(const FieldCtx& F, Poly a, u64 e, const Poly& m);

u32 p_eval(const FieldCtx& F, const Poly& a, u32 x);
Poly p_derivative(const FieldCtx& F, const Poly& a);

bool p_irreducible(const FieldCtx& F, const Poly& f);

struct PolyFactor {
    Poly base;  // monic irreducible
    u32 mult;
};

// Complete factorization of a nonconstant polynomial into monic irreducibles.
// The randomized equal-degree splitting uses the given seed, and the factor
// list comes back in a canonical order, so output is reproducible.
std::vector<PolyFactor> p_factorize(const FieldCtx& F, Poly f, u64 seed = 0x77a51ec5ULL);

// x with x = residues[i] mod moduli[i]; the moduli must be pairwise coprime.
Poly p_crt(const FieldCtx& F, const std::vector<Poly>& residues, const std::vector<Poly>& moduli);

std::string p_format(const Poly& a);                       // "2x^2+x+1" style, codes as coefficients
Poly p_parse(const FieldCtx& F, const std::string& text);  // accepts the same shape

}  // namespace waring
