#include "waring/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace waring {

namespace {
constexpr double TAU = 6.283185307179586476925286766559;
}

SpectrumReport spectrum(const FieldCtx& F, u64 k) {
    SpectrumReport r;
    r.k = k;
    r.q = F.q;
    r.d = std::gcd(k, u64(F.q - 1));
    r.size_star = (F.q - 1) / r.d;
    r.trivial = double(r.size_star);

    // trace lifts of every field element, then character sums per coset rep
    std::vector<u32> tr(F.q);
    for (u32 x = 0; x < F.q; ++x) tr[x] = F.trace(x);
    double maxabs = 0;
    for (u64 i = 0; i < r.d; ++i) {
        std::complex<double> acc{0, 0};
        // alpha = g^i against x = g^(j*d): exponents walk i + j*d mod q-1
        for (u64 j = 0; j < r.size_star; ++j) {
            u32 ax = F.antilog[i + j * r.d];  // antilog table is doubled, no reduction needed
            double ang = TAU * double(tr[ax]) / double(F.p);
            acc += std::complex<double>(std::cos(ang), std::sin(ang));
        }
        r.lambdas.push_back(acc);
        r.sum_sq += std::norm(acc);
        maxabs = std::max(maxabs, std::abs(acc));
    }
    r.n_star = double(F.q) / double(r.size_star) * maxabs;
    r.sg_bound = double(F.q) * std::sqrt(double(F.q - r.size_star)) / double(r.size_star);
    return r;
}

std::vector<std::complex<double>> spectrum_bruteforce(const FieldCtx& F, u64 k, u64 cap) {
    if (F.q > cap) fail("CapExceeded", "dense eigensolve capped");
    PowerClass pc = power_residues(F, k);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(long(F.q), long(F.q));
    for (u32 u = 0; u < F.q; ++u)
        for (u32 v = 0; v < F.q; ++v) {
            u32 diff = F.sub(v, u);
            if (diff && pc.members.test(diff)) A(u, v) = 1.0;
        }
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    std::vector<std::complex<double>> out;
    for (long i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

bool spectra_match(std::vector<std::complex<double>> computed,
                   const SpectrumReport& expected, double tol) {
    std::vector<std::complex<double>> want;
    want.push_back({expected.trivial, 0});
    for (const auto& l : expected.lambdas)
        for (u64 c = 0; c < expected.size_star; ++c) want.push_back(l);
    if (want.size() != computed.size()) return false;
    std::vector<char> used(computed.size(), 0);
    for (const auto& w : want) {
        double best = tol;
        std::size_t pick = computed.size();
        for (std::size_t i = 0; i < computed.size(); ++i) {
            if (used[i]) continue;
            double dist = std::abs(computed[i] - w);
            if (dist <= best) {
                best = dist;
                pick = i;
            }
        }
        if (pick == computed.size()) return false;
        used[pick] = 1;
    }
    return true;
}

bool two_power_guarantee(u64 k, u64 q) {
    // q > k^4, overflow-safe
    if (k >= 65536) return false;
    return q > k * k * k * k;
}

bool three_power_guarantee(u64 k, u64 q) {
    if (k >= u64(1) << 21) return false;
    return q > k * k * k;
}

double sarkozy_threshold(u64 k, u64 q) {
    return double(q) * double(k) / std::sqrt(double(q - 1));
}

std::optional<std::pair<u32, u32>> sarkozy_find_pair(const FieldCtx& F, u64 k,
                                                     const std::vector<u32>& set) {
    PowerClass pc = power_residues(F, k);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (i == j) continue;
            u32 diff = F.sub(set[i], set[j]);
            if (diff && pc.members.test(diff)) return std::make_pair(set[i], set[j]);
        }
    return std::nullopt;
}

namespace {

using i128 = __int128;

i128 ipow(i128 b, u32 e) {
    i128 r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

LemmaReport verify_appendix_lemmas(u64 x_max, u64 y_span) {
    LemmaReport rep;
    for (i128 x = 2; x <= i128(x_max); ++x) {
        for (i128 y = ipow(x, 4) + 1; y <= ipow(x, 4) + i128(y_span); ++y) {
            i128 lhs = ipow(y - 1, 4) - ipow(x, 4) * ipow(y, 3) + (y - 1) * y * y * ipow(x, 3);
            ++rep.checked_quartic;
            if (lhs <= 0) ++rep.violations;
        }
        for (i128 y = ipow(x, 3) + 1; y <= ipow(x, 3) + i128(y_span); ++y) {
            i128 lhs = ipow(y - 1, 3) - x * x * y * (x * y - y + 1);
            ++rep.checked_cubic;
            if (lhs <= 0) ++rep.violations;
        }
    }
    // conjectured shape (y-1)^m > y x^((m+1)/2) (xy-y+1)^((m-1)/2) under
    // y^(m-1) > x^(2m); floating-point reconnaissance only
    for (u32 m : {4u, 5u, 6u}) {
        LemmaReport::Probe pr{m, 0, 0, 1e300};
        for (u64 x = 2; x <= x_max; ++x) {
            // smallest y with y^(m-1) > x^(2m)
            u64 y0 = 2;
            while (ipow(i128(y0), m - 1) <= ipow(i128(x), 2 * m)) ++y0;
            for (u64 y = y0; y < y0 + y_span; ++y) {
                double lhs = std::pow(double(y - 1), double(m)) -
                             double(y) * std::pow(double(x), (m + 1) / 2.0) *
                                 std::pow(double(x) * y - y + 1, (m - 1) / 2.0);
                ++pr.checked;
                pr.min_margin = std::min(pr.min_margin, lhs);
                if (lhs <= 0) ++pr.violations;
            }
        }
        rep.probes.push_back(pr);
    }
    return rep;
}

}  // namespace waring
