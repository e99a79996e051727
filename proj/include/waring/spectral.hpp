#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "waring/gamma.hpp"

namespace waring {

// Eigenvalues of the Cayley digraph on F_q with connection set R_k*. The
// trivial eigenvalue |R_k*| has multiplicity 1; each lambda in `lambdas`
// (one per coset of R_k* in F_q*) has multiplicity |R_k*|.
struct SpectrumReport {
    u64 k = 0;
    u64 q = 0;
    u64 d = 0;
    u64 size_star = 0;
    double trivial = 0;
    std::vector<std::complex<double>> lambdas;
    double sum_sq = 0;     // sum of |lambda|^2 over the d coset classes; equals q - |R_k*|
    double n_star = 0;     // (q/|R_k*|) * max |lambda|
    double sg_bound = 0;   // q*sqrt(q-|R_k*|)/|R_k*|, the closed-form cap on n_star
};

SpectrumReport spectrum(const FieldCtx& F, u64 k);

// Dense eigendecomposition of the actual adjacency matrix; q capped at 512.
std::vector<std::complex<double>> spectrum_bruteforce(const FieldCtx& F, u64 k, u64 cap = 512);

// Multiset comparison: every expected value (with multiplicity) must match a
// distinct computed value within tol.
bool spectra_match(std::vector<std::complex<double>> computed,
                   const SpectrumReport& expected, double tol = 1e-6);

// Size guarantees from the spectral gap: q > k^4 forces gamma <= 2 and
// q > k^3 forces gamma <= 3.
bool two_power_guarantee(u64 k, u64 q);
bool three_power_guarantee(u64 k, u64 q);

// Any E in F_q with |E| > q*k/sqrt(q-1) contains distinct x, y with x - y a
// nonzero k-th power.
double sarkozy_threshold(u64 k, u64 q);
std::optional<std::pair<u32, u32>> sarkozy_find_pair(const FieldCtx& F, u64 k,
                                                     const std::vector<u32>& set);

// Exact checks of the two closure inequalities behind the size guarantees:
//   y > x^4  ->  (y-1)^4 - x^4 y^3 + (y-1) y^2 x^3 > 0
//   y > x^3  ->  (y-1)^3 - x^2 y (x y - y + 1) > 0
// for 2 <= x <= x_max and y running y_span steps up from the boundary. The
// analogous shape for m in {4,5,6} is probed in floating point and reported
// only; nothing is asserted about it.
struct LemmaReport {
    u64 checked_quartic = 0;
    u64 checked_cubic = 0;
    u64 violations = 0;
    struct Probe {
        u32 m;
        u64 checked;
        u64 violations;
        double min_margin;  // smallest observed left-hand side
    };
    std::vector<Probe> probes;
};
LemmaReport verify_appendix_lemmas(u64 x_max, u64 y_span);

}  // namespace waring
