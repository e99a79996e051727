#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "waring/field.hpp"
#include "waring/gamma.hpp"
#include "waring/matrix.hpp"
#include "waring/numbers.hpp"
#include "waring/reference_tables.hpp"
#include "waring/ring.hpp"

using namespace waring;

namespace {

u64 sum_powers(const RingSpec& R, const std::vector<u64>& ws, u64 k) {
    u64 s = r_zero(R);
    for (u64 w : ws) s = r_add(R, s, r_pow(R, w, k));
    return s;
}

// Minimal number of k-th power summands for every element, by breadth-first
// search over the sumset chain. dist[0] = 0 stands for the empty sum.
std::vector<u32> power_distances(const RingSpec& R, u64 k) {
    u64 n = r_order(R);
    std::vector<u64> powers;
    {
        std::vector<char> seen(n, 0);
        for (u64 x = 0; x < n; ++x) {
            u64 pw = r_pow(R, x, k);
            if (!seen[pw]) {
                seen[pw] = 1;
                powers.push_back(pw);
            }
        }
    }
    std::vector<u32> dist(n, UINT32_MAX);
    dist[0] = 0;
    std::vector<u64> frontier{0};
    while (!frontier.empty()) {
        std::vector<u64> next;
        for (u64 s : frontier)
            for (u64 pw : powers) {
                u64 t = r_add(R, s, pw);
                if (dist[t] == UINT32_MAX) {
                    dist[t] = dist[s] + 1;
                    next.push_back(t);
                }
            }
        frontier = std::move(next);
    }
    return dist;
}

// Admissible orders for the two-cube bound: no factor of 3, 4, or 7.
bool cube_friendly(u64 n) { return n % 3 != 0 && n % 4 != 0 && n % 7 != 0; }

}  // namespace

TEST_CASE("ring arithmetic basics across representations") {
    std::mt19937_64 rng(41);
    std::vector<RingSpec> rings;
    rings.push_back(make_zn(12));
    rings.push_back(make_zn(55));
    rings.push_back(parse_ring_spec("polyq:p=3,s=1,f=x^2+1,e=2"));
    rings.push_back(parse_ring_spec("prod:zn:6|zn:25"));
    for (const RingSpec& R : rings) {
        u64 n = r_order(R);
        u64 zero = r_zero(R), one = r_one(R);
        for (int trial = 0; trial < 60; ++trial) {
            u64 a = rng() % n, b = rng() % n, c = rng() % n;
            CHECK(r_add(R, a, zero) == a);
            CHECK(r_mul(R, a, one) == a);
            CHECK(r_add(R, a, r_neg(R, a)) == zero);
            CHECK(r_add(R, a, b) == r_add(R, b, a));
            CHECK(r_mul(R, a, b) == r_mul(R, b, a));
            CHECK(r_add(R, r_add(R, a, b), c) == r_add(R, a, r_add(R, b, c)));
            CHECK(r_mul(R, r_mul(R, a, b), c) == r_mul(R, a, r_mul(R, b, c)));
            CHECK(r_mul(R, a, r_add(R, b, c)) == r_add(R, r_mul(R, a, b), r_mul(R, a, c)));
            if (r_is_unit(R, a)) {
                CHECK(r_mul(R, a, r_inv(R, a)) == one);
            } else {
                try {
                    r_inv(R, a);
                    CHECK(false);
                } catch (const DomainError& e) {
                    CHECK(e.name() == "NotAUnit");
                }
            }
        }
    }
}

TEST_CASE("jacobson radical pinned shapes") {
    {
        RadicalDescription j = jacobson_radical(make_zn(12));
        CHECK(j.generators == std::vector<u64>{6});
        CHECK(j.nilpotency == 2);
        CHECK(j.size == 2);
    }
    {
        RadicalDescription j = jacobson_radical(make_zn(7));
        CHECK(j.size == 1);
        CHECK(j.nilpotency == 1);
    }
    {
        // F_3[x]/(x^3): the radical is (x), nilpotency 3, nine elements
        RingSpec R = parse_ring_spec("polyq:p=3,s=1,f=x,e=3");
        RadicalDescription j = jacobson_radical(R);
        CHECK(j.nilpotency == 3);
        CHECK(j.size == 9);
        REQUIRE(j.generators.size() == 1);
        CHECK(format_ring_element(R, j.generators[0]) == "0,1,0");
    }
}

TEST_CASE("radical membership matches the unit perturbation criterion") {
    // x lies in the radical of a finite commutative ring exactly when
    // 1 + y*x is a unit for every y.
    for (const char* spec : {"zn:12", "zn:45", "polyq:p=2,s=2,f=x,e=2", "prod:zn:4|zn:9"}) {
        RingSpec R = parse_ring_spec(spec);
        u64 n = r_order(R);
        for (u64 x = 0; x < n; ++x) {
            bool all_units = true;
            for (u64 y = 0; y < n && all_units; ++y)
                all_units = r_is_unit(R, r_add(R, r_one(R), r_mul(R, y, x)));
            CHECK(r_in_radical(R, x) == all_units);
        }
    }
}

TEST_CASE("radical newton lifting: pinned roots") {
    // x^3 - 7 over Z_25 from the approximate root 3
    CHECK(radical_hensel(make_zn(25), {25 - 7, 0, 0, 1}, 3) == 18);
    // x^5 - 4 over Z_27 from the approximate root 1
    CHECK(radical_hensel(make_zn(27), {27 - 4, 0, 0, 0, 0, 1}, 1) == 16);
    // semisimple ring: the seed must already be a root, and it is returned
    CHECK(radical_hensel(make_zn(7), {7 - 1, 0, 0, 1}, 4) == 4);
}

TEST_CASE("radical newton lifting: random unit k-th roots") {
    std::mt19937_64 rng(43);
    int ran = 0;
    while (ran < 120) {
        u64 n = 2 + rng() % 400;
        u64 k = 2 + rng() % 9;
        if (std::gcd(n, k) != 1) continue;
        RingSpec R = make_zn(n);
        u64 a = rng() % n;
        if (!r_is_unit(R, a)) continue;
        // p(x) = x^k - a^k has the exact root a; seed with a radical offset
        RadicalDescription j = jacobson_radical(R);
        u64 jgen = j.generators.empty() ? 0 : j.generators[rng() % j.generators.size()];
        u64 a0 = r_add(R, a, r_mul(R, jgen, rng() % n));
        std::vector<u64> coeffs(k + 1, 0);
        coeffs[0] = r_neg(R, r_pow(R, a, k));
        coeffs[k] = 1;
        u64 r = radical_hensel(R, coeffs, a0);
        CHECK(r_pow(R, r, k) == r_pow(R, a, k));
        // the lifted root stays in the seed's residue class modulo the radical
        CHECK(r_in_radical(R, r_sub(R, r, a0)));
        ++ran;
    }
    CHECK(ran == 120);
}

TEST_CASE("radical newton lifting rejects bad hypotheses") {
    RingSpec R = make_zn(25);
    // x^2 - 2: 2 is not a square mod 5, so the seed is not a root mod J
    try {
        radical_hensel(R, {25 - 2, 0, 1}, 1);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "NoRootModJ");
    }
    // x^5 - 7 at seed 7: a root mod 5, but the derivative 5*7^4 vanishes
    try {
        radical_hensel(R, {25 - 7, 0, 0, 0, 0, 1}, 7);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "DerivativeNotUnit");
    }
}

TEST_CASE("decomposition pinned witnesses") {
    {
        RingDecomposition d = decompose_ring_element(make_zn(25), 7, 3);
        CHECK(d.witnesses == std::vector<u64>{18});
        CHECK(verify_ring_decomposition(make_zn(25), d));
    }
    {
        // cubing is a bijection mod 55, so one witness always suffices
        RingDecomposition d = decompose_ring_element(make_zn(55), 17, 3);
        CHECK(d.witnesses == std::vector<u64>{8});
    }
    {
        RingDecomposition d = decompose_ring_element(make_zn(55), 0, 3);
        CHECK(d.witnesses == std::vector<u64>{0});
    }
    {
        // order 45 = 9 * 5 exercises the lifting path through Z_9
        RingSpec R = make_zn(45);
        RingDecomposition d = decompose_ring_element(R, 3, 7);
        CHECK(d.witnesses == std::vector<u64>{37, 20});
        CHECK(verify_ring_decomposition(R, d));
        CHECK(sum_powers(R, d.witnesses, 7) == 3);
    }
    {
        // k = 3 over Z_25 with a radical target
        RingSpec R = make_zn(25);
        RingDecomposition d = decompose_ring_element(R, 5, 3);
        CHECK(d.witnesses == std::vector<u64>{6, 4});
        CHECK(verify_ring_decomposition(R, d));
    }
    {
        // k = 4 over Z_25 with a radical target: even exponents cost more
        RingSpec R = make_zn(25);
        RingDecomposition d = decompose_ring_element(R, 5, 4);
        CHECK(d.witnesses == std::vector<u64>{1, 1, 1, 1, 1});
        CHECK(verify_ring_decomposition(R, d));
    }
    {
        // F_3[x]/(x^2), k = 5, target x
        RingSpec R = parse_ring_spec("polyq:p=3,s=1,f=x,e=2");
        u64 x = parse_ring_element(R, "0,1");
        RingDecomposition d = decompose_ring_element(R, x, 5);
        REQUIRE(d.witnesses.size() == 2);
        CHECK(format_ring_element(R, d.witnesses[0]) == "1,2");
        CHECK(format_ring_element(R, d.witnesses[1]) == "2,0");
        CHECK(verify_ring_decomposition(R, d));
    }
    {
        RingSpec R = parse_ring_spec("prod:zn:5|zn:11");
        CHECK(r_order(R) == 55);
        u64 a = parse_ring_element(R, "2|6");
        CHECK(format_ring_element(R, a) == "2|6");
        RingDecomposition d = decompose_ring_element(R, a, 3);
        REQUIRE(d.witnesses.size() == 1);
        CHECK(format_ring_element(R, d.witnesses[0]) == "3|8");
        CHECK(verify_ring_decomposition(R, d));
    }
}

TEST_CASE("decomposition domain errors") {
    try {
        decompose_ring_element(make_zn(12), 5, 3);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "GcdViolation");
    }
    FieldCtx F = build_field_q(4);
    RingSpec M = table_ring_from_matrices(F, 2);
    CHECK(!r_commutative(M));
    try {
        decompose_ring_element(M, 3, 3);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "NonCommutative");
    }
}

TEST_CASE("tampered decompositions fail verification") {
    RingSpec R = make_zn(45);
    RingDecomposition d = decompose_ring_element(R, 3, 7);
    REQUIRE(verify_ring_decomposition(R, d));
    RingDecomposition bad = d;
    bad.witnesses[0] = r_add(R, bad.witnesses[0], r_one(R));
    std::string diff;
    CHECK(!verify_ring_decomposition(R, bad, &diff));
    CHECK(!diff.empty());
}

TEST_CASE("semisimple counts are exactly minimal") {
    std::mt19937_64 rng(44);
    int instances = 0, targets = 0;
    while (instances < 18) {
        u64 n = 2 + rng() % 300;
        auto fac = factor(n);
        bool squarefree = true;
        for (const PrimePower& pp : fac) squarefree = squarefree && pp.e == 1;
        if (!squarefree) continue;
        u64 k = 2 + rng() % 6;
        if (std::gcd(n, k) != 1) continue;
        RingSpec R = make_zn(n);
        std::vector<u32> dist = power_distances(R, k);
        for (int t = 0; t < 12; ++t) {
            u64 alpha = rng() % n;
            RingDecomposition d = decompose_ring_element(R, alpha, k);
            CHECK(verify_ring_decomposition(R, d));
            u32 expect = alpha == 0 ? 1 : dist[alpha];
            CHECK(d.witnesses.size() == expect);
            ++targets;
        }
        ++instances;
    }
    CHECK(targets == 18 * 12);
}

TEST_CASE("prime orders agree with the field decomposer") {
    std::mt19937_64 rng(45);
    for (u64 p : {7, 13, 19, 31}) {
        RingSpec R = make_zn(p);
        FieldCtx F = build_field_q(p);
        for (u64 k : {3, 4, 5, 6}) {
            for (int t = 0; t < 10; ++t) {
                u64 alpha = 1 + rng() % (p - 1);
                RingDecomposition d = decompose_ring_element(R, alpha, k);
                CHECK(verify_ring_decomposition(R, d));
                CHECK(d.witnesses.size() == decompose_in_field(F, k, u32(alpha)).size());
            }
        }
    }
}

TEST_CASE("deep quotient counts respect the published bounds") {
    std::mt19937_64 rng(46);
    int checked = 0;
    for (u64 n : {8, 25, 27, 32, 121, 125, 169, 243, 625}) {
        for (u64 k : {3, 5, 7, 9, 11}) {
            if (std::gcd(n, k) != 1) continue;
            auto bound = tables::ring_bound(k, n);
            RingSpec R = make_zn(n);
            for (int t = 0; t < 8; ++t) {
                u64 alpha = rng() % n;
                RingDecomposition d = decompose_ring_element(R, alpha, k);
                CHECK(verify_ring_decomposition(R, d));
                if (bound && alpha != 0) CHECK(d.witnesses.size() <= *bound);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("order coprime to 3,4,7 forces at most two cubes") {
    std::mt19937_64 rng(47);
    int sampled = 0;
    for (u64 n = 2; n <= 300 && sampled < 40; ++n) {
        if (!cube_friendly(n)) continue;
        RingSpec R = make_zn(n);
        BruteWaring bw = brute_force_waring(R, 3);
        REQUIRE(bw.coverable);
        CHECK(bw.n <= 2);
        for (int t = 0; t < 5; ++t) {
            u64 alpha = rng() % n;
            RingDecomposition d = decompose_ring_element(R, alpha, 3);
            CHECK(verify_ring_decomposition(R, d));
            CHECK(d.witnesses.size() <= 2);
        }
        ++sampled;
    }
    CHECK(sampled == 40);
}

TEST_CASE("brute force pinned values") {
    CHECK(brute_force_waring(make_zn(55), 3).n == 1);
    CHECK(brute_force_waring(make_zn(7), 3).n == 3);
    CHECK(brute_force_waring(make_zn(25), 3).n == 2);
    RingSpec R = parse_ring_spec("polyq:p=3,s=1,f=x,e=2");
    CHECK(brute_force_waring(R, 5).n == 2);
}

TEST_CASE("subring generated by a matrix") {
    // the identity generates the prime field scalars
    FieldCtx F5 = build_field_q(5);
    SubringResult scalars = zalpha_subring(F5, m_identity(2));
    CHECK(r_order(scalars.ring) == 5);
    CHECK(r_commutative(scalars.ring));

    // this matrix has an irreducible degree-2 minimal polynomial over F_4,
    // so it generates a copy of F_16 inside Mat_2(F_4)
    FieldCtx F4 = build_field_q(4);
    FqMatrix A = parse_matrix(F4, "1,1;1,g+1");
    SubringResult S = zalpha_subring(F4, A);
    CHECK(r_order(S.ring) == 16);
    CHECK(r_commutative(S.ring));
    BruteWaring bw = brute_force_waring(S.ring, 3);
    REQUIRE(bw.coverable);
    GammaResult g16 = gamma_of(3, 16);
    REQUIRE(g16.coverable);
    CHECK(g16.gamma == 2);
    CHECK(bw.n == g16.gamma);

    // inside Z_12, any element generates the whole ring (the subring has 1)
    SubringResult T = zalpha_subring(make_zn(12), 3);
    CHECK(r_order(T.ring) == 12);
}

TEST_CASE("Mat2(F4) as a table ring: every element is a sum of two cubes") {
    FieldCtx F = build_field_q(4);
    RingSpec M = table_ring_from_matrices(F, 2);
    CHECK(r_order(M) == 256);
    CHECK(!r_commutative(M));
    RadicalDescription j = jacobson_radical(M);
    CHECK(j.size == 1);
    CHECK(j.nilpotency == 1);
    BruteWaring bw = brute_force_waring(M, 3);
    REQUIRE(bw.coverable);
    CHECK(bw.n == 2);
}

TEST_CASE("unit power criterion pinned verdicts") {
    // 3^27 with k=7: the scan reaches 3^6 - 1 = 728, divisible by 7
    {
        UnitPowerVerdict v = unit_power_criterion({{3, 27}}, 7, UnitPowerMode::General);
        CHECK(!v.passes);
        CHECK(v.witness_prime == 3);
        CHECK(v.witness_gcd == 7);
        CHECK(v.detail.find("3^6") != std::string::npos);
    }
    // exponent 4 stops before the obstruction: gcd(7, 2*8*26*80) = 1
    {
        UnitPowerVerdict v = unit_power_criterion({{3, 4}}, 7, UnitPowerMode::General);
        CHECK(v.passes);
        CHECK(v.elements_need == 1);
    }
    // cubefree mode checks only the top layer: 5^2, k=3 hits gcd(3, 24) = 3
    {
        UnitPowerVerdict v = unit_power_criterion({{5, 2}}, 3, UnitPowerMode::Cubefree);
        CHECK(!v.passes);
        CHECK(v.witness_gcd == 3);
    }
    // cubefree mode rejects exponents above 2
    try {
        unit_power_criterion({{3, 3}}, 5, UnitPowerMode::Cubefree);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "ModeViolation");
    }
    // malformed factorizations are rejected
    try {
        unit_power_criterion({{4, 1}}, 5, UnitPowerMode::General);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "InvalidFactorization");
    }
    try {
        unit_power_criterion({{3, 1}, {3, 2}}, 5, UnitPowerMode::General);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "InvalidFactorization");
    }
}

TEST_CASE("criterion verdicts agree with power map surjectivity") {
    // The general verdict for (p, e) holds exactly when the k-th power map
    // is onto in every field F_{p^i} with i <= e.
    for (u64 p : {2, 3, 5, 7}) {
        for (u32 e : {1u, 2u, 3u, 4u}) {
            for (u64 k : {3, 5, 7, 9, 11}) {
                if (k % p == 0) continue;
                UnitPowerVerdict v = unit_power_criterion({{p, e}}, k, UnitPowerMode::General);
                bool all_onto = true;
                for (u32 i = 1; i <= e; ++i) {
                    FieldCtx F = build_field(p, i);
                    all_onto = all_onto && power_residues(F, k).d == 1;
                }
                CHECK(v.passes == all_onto);
            }
        }
    }
}

TEST_CASE("ring spec strings round-trip") {
    for (const char* s :
         {"zn:55", "polyq:p=3,s=1,f=x^2+1,e=2", "prod:zn:5|zn:11", "prod:zn:4|zn:9|zn:25"}) {
        RingSpec R = parse_ring_spec(s);
        CHECK(format_ring_spec(R) == s);
        std::mt19937_64 rng(49);
        for (int t = 0; t < 20; ++t) {
            u64 a = rng() % r_order(R);
            CHECK(parse_ring_element(R, format_ring_element(R, a)) == a);
        }
    }
    try {
        parse_ring_spec("prod:prod:zn:2|zn:3|zn:5");
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "ParseError");
    }
    try {
        parse_ring_spec("ring:55");
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.name() == "ParseError");
    }
}
