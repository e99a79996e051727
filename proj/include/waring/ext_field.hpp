#pragma once

#include "waring/poly.hpp"

namespace waring {

// F_q[x]/(g) for monic irreducible g, used as the residue field of a factor
// without moving to a canonical isomorphic copy. Elements are represented
// either as reduced polynomials or as codes packing the coefficient vector
// in base q, constant digit least significant.
struct ExtField {
    const FieldCtx* base = nullptr;
    Poly g;
    u32 ext_deg = 0;
    u64 size = 0;
};

ExtField make_ext_field(const FieldCtx& F, Poly g, u64 cap = 0);

u64 ef_code(const ExtField& E, const Poly& a);
Poly ef_poly(const ExtField& E, u64 code);
u64 ef_add(const ExtField& E, u64 a, u64 b);
u64 ef_neg(const ExtField& E, u64 a);
u64 ef_mul(const ExtField& E, u64 a, u64 b);
u64 ef_inv(const ExtField& E, u64 a);
u64 ef_pow(const ExtField& E, u64 a, u64 e);

// Minimal-length witness search by breadth-first closure of sums of k-th
// powers. For target 0 the result is m = 1 with the single witness 0.
struct ExtDecomp {
    bool coverable = false;
    u32 gamma = 0;  // meaningful when coverable
    u32 m = 0;
    std::vector<Poly> witnesses;
};
ExtDecomp ext_decompose(const ExtField& E, u64 k, const Poly& target);

// Coverability and gamma only (same closure, no witness chain kept).
struct ExtGamma {
    bool coverable = false;
    u32 gamma = 0;
};
ExtGamma ext_gamma(const ExtField& E, u64 k);

}  // namespace waring
