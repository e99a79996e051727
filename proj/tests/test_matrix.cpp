#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "waring/gamma.hpp"
#include "waring/matrix.hpp"
#include "waring/reference_tables.hpp"

using namespace waring;

namespace {

FqMatrix rand_matrix(const FieldCtx& F, std::mt19937_64& rng, u32 n) {
    FqMatrix A = m_zero(n);
    for (auto& e : A.a) e = u32(rng() % F.q);
    return A;
}

// Companion matrix of a monic f: subdiagonal ones, last column -f[j].
FqMatrix companion(const FieldCtx& F, const Poly& f) {
    u32 n = u32(p_deg(f));
    FqMatrix C = m_zero(n);
    for (u32 i = 0; i + 1 < n; ++i) C.at(i + 1, i) = 1;
    for (u32 j = 0; j < n; ++j) C.at(j, n - 1) = F.neg(f[j]);
    return C;
}

FqMatrix sum_of_powers(const FieldCtx& F, const std::vector<FqMatrix>& ws, u64 k) {
    FqMatrix S = m_zero(ws.at(0).n);
    for (const auto& B : ws) S = m_add(F, S, m_pow(F, B, k));
    return S;
}

}  // namespace

TEST_CASE("minimal polynomial pinned cases") {
    for (u64 q : {2, 5, 9}) {
        FieldCtx F = build_field_q(u64(q));
        Poly xm1 = p_sub(F, Poly{0, 1}, p_const(1));
        CHECK(minimal_polynomial(F, m_identity(3)) == xm1);
    }
    // companion matrices realize their polynomial exactly
    std::mt19937_64 rng(31);
    for (u64 q : {3, 4, 7}) {
        FieldCtx F = build_field_q(u64(q));
        for (int trial = 0; trial < 25; ++trial) {
            u32 n = 2 + u32(rng() % 3);
            Poly f(n + 1);
            for (u32 i = 0; i < n; ++i) f[i] = u32(rng() % F.q);
            f[n] = 1;
            FqMatrix C = companion(F, f);
            Poly m = minimal_polynomial(F, C);
            CHECK(m == f);
            CHECK(m_is_zero(m_eval_poly(F, m, C)));
        }
    }
    // the 2x2 matrix [[1,1],[1,t+1]] over F_4 has a degree-2 annihilator
    {
        FieldCtx F = build_field_q(4);
        FqMatrix A{2, {1, 1, 1, 3}};
        Poly m = minimal_polynomial(F, A);
        CHECK(p_deg(m) == 2);
        CHECK(m_is_zero(m_eval_poly(F, m, A)));
    }
}

TEST_CASE("factorization pinned cases") {
    {
        FieldCtx F = build_field_q(2);
        auto fs = p_factorize(F, Poly{1, 1, 1});
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].base == Poly{1, 1, 1});
        CHECK(fs[0].mult == 1);
    }
    {
        FieldCtx F = build_field_q(3);
        auto fs = p_factorize(F, Poly{0, 0, 1});
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].base == Poly{0, 1});
        CHECK(fs[0].mult == 2);
    }
    {
        // x^4 - 1 over F_5 splits into the four linear factors x - u
        FieldCtx F = build_field_q(5);
        auto fs = p_factorize(F, Poly{4, 0, 0, 0, 1});
        REQUIRE(fs.size() == 4);
        std::vector<Poly> bases;
        for (auto& pf : fs) {
            CHECK(pf.mult == 1);
            bases.push_back(pf.base);
        }
        for (u32 r = 1; r <= 4; ++r)
            CHECK(std::count(bases.begin(), bases.end(), Poly{F.neg(r), 1}) == 1);
    }
}

TEST_CASE("the Mat2(F4) cube identity") {
    FieldCtx F = build_field_q(4);
    // t is the canonical generator, code 2
    FqMatrix A{2, {1, 1, 1, 3}};
    FqMatrix B{2, {3, 1, 1, 1}};
    FqMatrix A3 = m_pow(F, A, 3);
    CHECK(A3 == FqMatrix{2, {2, 1, 1, 0}});
    FqMatrix sum = m_add(F, A3, m_pow(F, B, 3));
    CHECK(sum == m_scalar(2, 2));
}

TEST_CASE("decompose diag(t,t) over F4 with k=3") {
    FieldCtx F = build_field_q(4);
    FqMatrix A = m_scalar(2, 2);
    MatrixDecomposition d = decompose_matrix(F, A, 3);
    CHECK(d.witnesses.size() == 2);
    std::string diff;
    CHECK(verify_matrix_decomposition(F, d, &diff));
    CHECK(sum_of_powers(F, d.witnesses, 3) == A);
}

TEST_CASE("zero matrix and domain errors") {
    FieldCtx F5 = build_field_q(5);
    MatrixDecomposition z = decompose_matrix(F5, m_zero(3), 4);
    REQUIRE(z.witnesses.size() == 1);
    CHECK(m_is_zero(z.witnesses[0]));

    try {
        decompose_matrix(F5, m_identity(2), 5);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "CharDividesK");
    }
}

TEST_CASE("tampered witnesses are rejected") {
    FieldCtx F = build_field_q(7);
    std::mt19937_64 rng(32);
    FqMatrix A = rand_matrix(F, rng, 2);
    MatrixDecomposition d = decompose_matrix(F, A, 3);
    CHECK(verify_matrix_decomposition(F, d));
    MatrixDecomposition bad = d;
    bad.witnesses[0].at(0, 0) = F.add(bad.witnesses[0].at(0, 0), 1);
    std::string diff;
    CHECK(!verify_matrix_decomposition(F, bad, &diff));
    CHECK(!diff.empty());
}

TEST_CASE("field-level decomposition of 3 in F7 uses three cubes") {
    FieldCtx F = build_field_q(7);
    std::vector<u32> w = decompose_in_field(F, 3, 3);
    CHECK(w.size() == 3);
    u32 sum = 0;
    for (u32 b : w) sum = F.add(sum, F.pow(b, 3));
    CHECK(sum == 3);
}

TEST_CASE("random matrices stay within the table bounds") {
    std::mt19937_64 rng(33);
    const u64 qs[] = {5, 7, 9, 11};
    for (u32 n = 2; n <= 3; ++n) {
        for (u64 q : qs) {
            FieldCtx F = build_field_q(q);
            for (u64 k = 3; k <= 5; ++k) {
                if (k % F.p == 0) continue;
                auto bound = tables::matrix_bound(k, q, F.p);
                if (!bound) continue;  // no row admits this field size
                for (int trial = 0; trial < 30; ++trial) {
                    FqMatrix A = rand_matrix(F, rng, n);
                    MatrixDecomposition d = decompose_matrix(F, A, k);
                    std::string diff;
                    CHECK(verify_matrix_decomposition(F, d, &diff));
                    CHECK(sum_of_powers(F, d.witnesses, k) == A);
                    if (!m_is_zero(A)) CHECK(d.witnesses.size() <= *bound);

                    // witnesses are polynomials in A: they commute pairwise
                    for (auto& B : d.witnesses) {
                        CHECK(m_mul(F, B, A) == m_mul(F, A, B));
                        for (auto& C : d.witnesses) CHECK(m_mul(F, B, C) == m_mul(F, C, B));
                    }
                }
            }
        }
    }
}

TEST_CASE("witness certificates evaluate back to the witnesses") {
    std::mt19937_64 rng(34);
    FieldCtx F = build_field_q(9);
    for (int trial = 0; trial < 20; ++trial) {
        FqMatrix A = rand_matrix(F, rng, 3);
        MatrixDecomposition d = decompose_matrix(F, A, 5);
        if (d.witness_polys.empty()) continue;  // whole-ring fallback has no certificates
        REQUIRE(d.witness_polys.size() == d.witnesses.size());
        for (std::size_t i = 0; i < d.witnesses.size(); ++i)
            CHECK(m_eval_poly(F, d.witness_polys[i], A) == d.witnesses[i]);
    }
}

TEST_CASE("matrix parse and format round-trip") {
    FieldCtx F = build_field_q(4);
    FqMatrix A = parse_matrix(F, "g+1,1;1,g");
    CHECK(A == FqMatrix{2, {3, 1, 1, 2}});
    CHECK(parse_matrix(F, format_matrix(A)) == A);
    try {
        parse_matrix(F, "1,2;3");
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "ParseError");
    }
}
