#pragma once

#include <optional>

#include "waring/field.hpp"

namespace waring {

// Nonzero k-th powers form the subgroup R_k* = <g^d> of index d = gcd(k, q-1);
// members additionally holds 0.
struct PowerClass {
    u64 k = 0;
    u64 d = 0;
    u64 size_star = 0;
    DynBitset members;
};

PowerClass power_residues(const FieldCtx& F, u64 k);

// Waring state of one field: either Covered(gamma) with
// closure_sizes = |R_k|, |2R_k|, ..., q, or Uncoverable with the sizes
// ending in a stabilized repeat.
struct GammaResult {
    u64 k = 0;
    u64 q = 0;
    u64 d = 0;
    bool coverable = false;
    u32 gamma = 0;  // meaningful when coverable
    std::vector<u64> closure_sizes;
};

struct GammaOptions {
    bool force_bitset = false;  // skip the coset-mask fast path (testing)
};

GammaResult gamma_of(const FieldCtx& F, u64 k, const GammaOptions& opt = {});
GammaResult gamma_of(u64 k, u64 q, const GammaOptions& opt = {}, u64 cap = 0);

// Prime powers q <= bound (default 8k^4) whose closure stabilizes inside a
// proper subfield.
std::vector<u64> uncoverable_fields(u64 k, u64 bound = 0);

// One row per prime power q <= q_max, optionally filtered to
// coverable rows with gamma in [filter->first, filter->second].
std::vector<GammaResult> gamma_table(u64 k, u64 q_max,
                                     std::optional<std::pair<u32, u32>> filter = {});

// max gamma(k, q) over coverable prime powers; the search stops at k^4
// because larger fields are two-power fields.  k_cap guards runtime.
u32 gamma_max(u64 k, u64 k_cap = 20);

// Witnesses b_1..b_m with sum b_i^k = target, m minimal for this target.
std::vector<u32> decompose_in_field(const FieldCtx& F, u64 k, u32 target);

}  // namespace waring
