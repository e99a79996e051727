#pragma once

#include <optional>
#include <vector>

#include "waring/util.hpp"

// Curated reference data for small exponents: uncoverable field lists,
// gamma classifications, worst-case gamma values, and the row guards used
// by the matrix and ring decomposition pipelines. These values serve as
// regression fixtures; the engines recompute them independently.

namespace waring::tables {

// All uncoverable field sizes for exponent k, 3 <= k <= 37.
// Empty result means every field is coverable for this k.
const std::vector<u64>& uncoverable_expected(u64 k);

// Field sizes q with gamma(k,q) == g, for 4 <= k <= 37 and g in {3,4,5,6}.
// For k >= 20 the g == 3 list is complete only for q <= gamma3_complete_bound(k);
// the g in {4,5,6} lists are complete everywhere.
const std::vector<u64>& gamma_class_expected(u64 k, u32 g);

// Upper limit below which the g == 3 classification list is exhaustive.
u64 gamma3_complete_bound(u64 k);

struct HighGammaEntry {
    u64 k;
    u64 q;
    u32 gamma;
};

// Every (k, q) with 4 <= k <= 37 and gamma(k,q) >= 7, with the exact value.
const std::vector<HighGammaEntry>& high_gamma_entries();

// Worst case of gamma(k,q) over all coverable q, for 1 <= k <= 37.
u32 gamma_max_expected(u64 k);

struct CorrectionEntry {
    u64 k;
    u64 q;
    u32 gamma;
};

// Values that older published lists got wrong; pinned here as fixtures.
const std::vector<CorrectionEntry>& corrected_values();

// Matrix-ring witness bounds. A row admits F_q when q is not one of the
// excluded sizes and char(F_q) is not one of the excluded characteristics;
// then every matrix over F_q is a sum of m k-th powers of polynomials in it.
struct MatrixRow {
    std::vector<u64> excluded_q;
    std::vector<u64> excluded_char;
    u32 m;
};

// Rows for 3 <= k <= 11, ordered by decreasing m; nullptr outside that range.
const std::vector<MatrixRow>* matrix_rows(u64 k);

// Least m over all rows admitting (q, p), or nullopt when none does.
std::optional<u32> matrix_bound(u64 k, u64 q, u64 p);

// Finite-ring witness bounds. A row admits a ring when none of its listed
// divisors divides the ring order; then every element is a sum of n k-th
// powers drawn from the unital subring generated by the target.
struct RingRow {
    std::vector<u64> divisors;
    u32 n;
};

// Rows for 3 <= k <= 11, ordered by decreasing n; nullptr outside that range.
const std::vector<RingRow>* ring_rows(u64 k);

// Least n over all rows admitting the order, or nullopt when none does.
std::optional<u32> ring_bound(u64 k, u64 order);

}  // namespace waring::tables
