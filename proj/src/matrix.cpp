#include "waring/matrix.hpp"

#include <algorithm>
#include <optional>

#include "waring/ext_field.hpp"
#include "waring/hensel.hpp"
#include "waring/reference_tables.hpp"

namespace waring {

FqMatrix m_zero(u32 n) { return {n, std::vector<u32>(std::size_t(n) * n, 0)}; }

FqMatrix m_scalar(u32 n, u32 c) {
    FqMatrix M = m_zero(n);
    for (u32 i = 0; i < n; ++i) M.at(i, i) = c;
    return M;
}

FqMatrix m_identity(u32 n) { return m_scalar(n, 1); }

static void check_same_shape(const FqMatrix& A, const FqMatrix& B) {
    if (A.n != B.n) fail("OutOfRange", "matrix dimension mismatch");
}

FqMatrix m_add(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B) {
    check_same_shape(A, B);
    FqMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

FqMatrix m_sub(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B) {
    check_same_shape(A, B);
    FqMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

FqMatrix m_neg(const FieldCtx& F, const FqMatrix& A) {
    FqMatrix C = A;
    for (auto& e : C.a) e = F.neg(e);
    return C;
}

FqMatrix m_mul(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B) {
    check_same_shape(A, B);
    const u32 n = A.n;
    FqMatrix C = m_zero(n);
    for (u32 i = 0; i < n; ++i)
        for (u32 l = 0; l < n; ++l) {
            u32 ail = A.at(i, l);
            if (ail == 0) continue;
            for (u32 j = 0; j < n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(ail, B.at(l, j)));
        }
    return C;
}

FqMatrix m_pow(const FieldCtx& F, FqMatrix A, u64 e) {
    FqMatrix R = m_identity(A.n);
    while (e > 0) {
        if (e & 1) R = m_mul(F, R, A);
        e >>= 1;
        if (e > 0) A = m_mul(F, A, A);
    }
    return R;
}

FqMatrix m_eval_poly(const FieldCtx& F, const Poly& p, const FqMatrix& A) {
    FqMatrix R = m_zero(A.n);
    for (std::size_t i = p.size(); i-- > 0;)
        R = m_add(F, m_mul(F, R, A), m_scalar(A.n, p[i]));
    return R;
}

bool m_is_zero(const FqMatrix& A) {
    return std::all_of(A.a.begin(), A.a.end(), [](u32 e) { return e == 0; });
}

namespace {

std::vector<u32> mat_vec(const FieldCtx& F, const FqMatrix& A, const std::vector<u32>& v) {
    std::vector<u32> out(A.n, 0);
    for (u32 i = 0; i < A.n; ++i) {
        u32 acc = 0;
        for (u32 j = 0; j < A.n; ++j) acc = F.add(acc, F.mul(A.at(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

Poly poly_lcm(const FieldCtx& F, const Poly& a, const Poly& b) {
    if (p_is_zero(a)) return p_monic(F, b);
    if (p_is_zero(b)) return p_monic(F, a);
    Poly g = p_gcd(F, a, b);
    return p_monic(F, p_mul(F, p_div_exact(F, a, g), b));
}

}  // namespace

Poly minimal_polynomial(const FieldCtx& F, const FqMatrix& A) {
    const u32 n = A.n;
    if (n == 0) fail("OutOfRange", "empty matrix");
    Poly acc = Poly{1};
    for (u32 col = 0; col < n && p_deg(acc) < int(n); ++col) {
        // Krylov chain from e_col with exact polynomial bookkeeping: every
        // stored vector is (combo)(A) e_col, so the first dependency yields a
        // monic annihilator of e_col.
        struct Row {
            std::vector<u32> vec;
            Poly combo;
            u32 pivot;
        };
        std::vector<Row> rows;
        std::vector<u32> v(n, 0);
        v[col] = 1;
        Poly vpoly = Poly{1};
        bool closed = false;
        for (u32 step = 0; step <= n; ++step) {
            std::vector<u32> cand = v;
            Poly combo = vpoly;
            for (const auto& r : rows) {
                u32 c = cand[r.pivot];
                if (c == 0) continue;
                for (u32 t = 0; t < n; ++t) cand[t] = F.sub(cand[t], F.mul(c, r.vec[t]));
                combo = p_sub(F, std::move(combo), p_scale(F, r.combo, c));
            }
            u32 piv = n;
            for (u32 t = 0; t < n; ++t)
                if (cand[t] != 0) {
                    piv = t;
                    break;
                }
            if (piv == n) {
                acc = poly_lcm(F, acc, combo);
                closed = true;
                break;
            }
            u32 sc = F.inv(cand[piv]);
            for (u32 t = 0; t < n; ++t) cand[t] = F.mul(cand[t], sc);
            rows.push_back({std::move(cand), p_scale(F, std::move(combo), sc), piv});
            v = mat_vec(F, A, v);
            vpoly.insert(vpoly.begin(), 0);
        }
        if (!closed) fail("LiftMismatch", "annihilator chain failed to close");
    }
    return acc;
}

namespace {

// Base-q packing of the entries, first entry least significant.
u64 mat_code(const FieldCtx& F, const FqMatrix& M) {
    u64 c = 0;
    for (std::size_t i = M.a.size(); i-- > 0;) c = c * F.q + M.a[i];
    return c;
}

FqMatrix mat_decode(const FieldCtx& F, u32 n, u64 code) {
    FqMatrix M = m_zero(n);
    for (std::size_t i = 0; i < M.a.size(); ++i) {
        M.a[i] = u32(code % F.q);
        code /= F.q;
    }
    return M;
}

constexpr u64 kWholeRingCap = 4096;

// Minimal-length witness search over the whole matrix ring by breadth-first
// closure of sums of k-th powers. Only viable at small ring sizes; returns
// nothing when the ring is too large or the target is not reachable.
std::optional<std::vector<FqMatrix>> whole_ring_search(const FieldCtx& F, const FqMatrix& A,
                                                       u64 k) {
    u64 total = 1;
    for (std::size_t i = 0; i < A.a.size(); ++i) {
        if (total > kWholeRingCap / F.q) return std::nullopt;
        total *= F.q;
    }
    std::vector<u8> seen(total, 0);
    std::vector<u64> preimage(total, 0);
    std::vector<u64> powers;
    for (u64 c = 0; c < total; ++c) {
        u64 pc = mat_code(F, m_pow(F, mat_decode(F, A.n, c), k));
        if (!seen[pc]) {
            seen[pc] = 1;
            preimage[pc] = c;
            powers.push_back(pc);
        }
    }
    const u64 target = mat_code(F, A);
    std::vector<u8> dist(total, 0xFF);
    std::vector<u64> via(total, 0);
    dist[0] = 0;
    std::vector<u64> frontier = {0};
    while (!frontier.empty() && dist[target] == 0xFF) {
        std::vector<u64> next;
        for (u64 r : frontier) {
            FqMatrix R = mat_decode(F, A.n, r);
            for (u64 pc : powers) {
                u64 s = mat_code(F, m_add(F, R, mat_decode(F, A.n, pc)));
                if (dist[s] == 0xFF) {
                    dist[s] = u8(dist[r] + 1);
                    via[s] = pc;
                    next.push_back(s);
                }
            }
        }
        frontier = std::move(next);
    }
    if (dist[target] == 0xFF) return std::nullopt;
    std::vector<FqMatrix> out;
    u64 cur = target;
    while (cur != 0) {
        u64 pc = via[cur];
        out.push_back(mat_decode(F, A.n, preimage[pc]));
        cur = mat_code(F, m_sub(F, mat_decode(F, A.n, cur), mat_decode(F, A.n, pc)));
    }
    return out;
}

}  // namespace

MatrixDecomposition decompose_matrix(const FieldCtx& F, const FqMatrix& A, u64 k) {
    if (k == 0) fail("OutOfRange", "k must be positive");
    if (A.n == 0) fail("OutOfRange", "empty matrix");
    if (k % F.p == 0)
        fail("CharDividesK", "characteristic " + std::to_string(F.p) + " divides k=" +
                                 std::to_string(k));
    MatrixDecomposition d{A, k, {}, {}};
    if (m_is_zero(A)) {
        d.witnesses = {m_zero(A.n)};
        d.witness_polys = {Poly{}};
        return d;
    }

    Poly mA = minimal_polynomial(F, A);
    auto factors = p_factorize(F, mA);

    std::vector<std::vector<Poly>> lifted(factors.size());
    std::vector<Poly> moduli(factors.size());
    for (std::size_t r = 0; r < factors.size(); ++r) {
        const Poly& pr = factors[r].base;
        moduli[r] = p_powu(F, pr, factors[r].mult);
        ExtField E = make_ext_field(F, pr);
        ExtDecomp base = ext_decompose(E, k, p_mod(F, Poly{0, 1}, pr));
        if (!base.coverable) {
            auto found = whole_ring_search(F, A, k);
            if (found) {
                d.witnesses = std::move(*found);
                std::string diff;
                if (!verify_matrix_decomposition(F, d, &diff)) fail("LiftMismatch", diff);
                return d;
            }
            if (!tables::matrix_bound(k, F.q, F.p))
                fail("ExcludedFieldSize",
                     "q=" + std::to_string(F.q) + " is outside every admitted row for k=" +
                         std::to_string(k));
            fail("ResidueFieldUncoverable",
                 "factor " + p_format(pr) + " has an uncoverable residue field of size " +
                     std::to_string(E.size));
        }
        lifted[r] = lift_power_sum(F, pr, k, p_mod(F, Poly{0, 1}, moduli[r]), factors[r].mult,
                                   std::move(base.witnesses));
    }

    std::size_t count = 0;
    for (const auto& w : lifted) count = std::max(count, w.size());
    for (auto& w : lifted) w.resize(count);  // pad with zero residues

    for (std::size_t s = 0; s < count; ++s) {
        std::vector<Poly> residues(factors.size());
        for (std::size_t r = 0; r < factors.size(); ++r) residues[r] = lifted[r][s];
        Poly P = p_crt(F, residues, moduli);
        d.witness_polys.push_back(P);
        d.witnesses.push_back(m_eval_poly(F, P, A));
    }

    std::string diff;
    if (!verify_matrix_decomposition(F, d, &diff)) fail("LiftMismatch", diff);
    return d;
}

bool verify_matrix_decomposition(const FieldCtx& F, const MatrixDecomposition& d,
                                 std::string* diff) {
    auto note = [&](const std::string& s) {
        if (diff == nullptr) return;
        if (!diff->empty()) *diff += "; ";
        *diff += s;
    };
    if (d.target.n == 0) {
        note("empty target");
        return false;
    }
    bool ok = true;
    FqMatrix sum = m_zero(d.target.n);
    for (const auto& w : d.witnesses) {
        if (w.n != d.target.n) {
            note("witness dimension mismatch");
            return false;
        }
        sum = m_add(F, sum, m_pow(F, w, d.k));
    }
    if (!(sum == d.target)) {
        note("powers sum to " + format_matrix(sum) + ", target " + format_matrix(d.target));
        ok = false;
    }
    if (!d.witness_polys.empty()) {
        if (d.witness_polys.size() != d.witnesses.size()) {
            note("certificate count mismatch");
            ok = false;
        } else {
            for (std::size_t i = 0; i < d.witnesses.size(); ++i) {
                if (!(m_eval_poly(F, d.witness_polys[i], d.target) == d.witnesses[i])) {
                    note("witness " + std::to_string(i) +
                         " does not match its certifying polynomial");
                    ok = false;
                }
            }
        }
    }
    return ok;
}

FqMatrix parse_matrix(const FieldCtx& F, const std::string& text) {
    std::vector<std::vector<u32>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t rend = text.find(';', pos);
        if (rend == std::string::npos) rend = text.size();
        std::string row = text.substr(pos, rend - pos);
        std::vector<u32> entries;
        std::size_t ep = 0;
        while (ep <= row.size()) {
            std::size_t eend = row.find(',', ep);
            if (eend == std::string::npos) eend = row.size();
            entries.push_back(parse_element(F, row.substr(ep, eend - ep)));
            if (eend == row.size()) break;
            ep = eend + 1;
        }
        rows.push_back(std::move(entries));
        if (rend == text.size()) break;
        pos = rend + 1;
    }
    if (rows.empty()) fail("ParseError", "empty matrix");
    const std::size_t n = rows.size();
    FqMatrix M = m_zero(u32(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            fail("ParseError", "row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " entries, expected " +
                                   std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) M.at(u32(i), u32(j)) = rows[i][j];
    }
    return M;
}

std::string format_matrix(const FqMatrix& A) {
    std::string out;
    for (u32 i = 0; i < A.n; ++i) {
        if (i) out += ';';
        for (u32 j = 0; j < A.n; ++j) {
            if (j) out += ',';
            out += format_element(A.at(i, j));
        }
    }
    return out;
}

}  // namespace waring
