#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "waring/gamma.hpp"
#include "waring/numbers.hpp"

using namespace waring;

namespace {

// Naive oracle: explicit element sets, element-by-element sums, no bitsets.
struct NaiveResult {
    bool coverable = false;
    u32 gamma = 0;
    std::vector<u64> sizes;
    std::set<u32> final_set;
};

NaiveResult naive_gamma(const FieldCtx& F, u64 k) {
    NaiveResult N;
    std::set<u32> R;
    for (u64 x = 0; x < F.q; ++x) R.insert(F.pow(u32(x), k));
    std::set<u32> cur = R;
    N.sizes.push_back(cur.size());
    if (cur.size() == F.q) {
        N.coverable = true;
        N.gamma = 1;
        N.final_set = cur;
        return N;
    }
    while (true) {
        std::set<u32> next;
        for (u32 a : cur)
            for (u32 r : R) next.insert(F.add(a, r));
        N.sizes.push_back(next.size());
        if (next.size() == cur.size()) {
            N.coverable = false;
            N.final_set = cur;
            return N;
        }
        cur = std::move(next);
        if (cur.size() == F.q) {
            N.coverable = true;
            N.gamma = u32(N.sizes.size());
            N.final_set = cur;
            return N;
        }
    }
}

}  // namespace

TEST_CASE("worked examples") {
    CHECK(gamma_of(3, 7).coverable);
    CHECK(gamma_of(3, 7).gamma == 3);
    CHECK(gamma_of(3, 7).closure_sizes == std::vector<u64>{3, 5, 7});
    CHECK_FALSE(gamma_of(3, 4).coverable);
    CHECK(gamma_of(2, 8).gamma == 1);   // char 2: squaring is a bijection
    CHECK(gamma_of(2, 16).gamma == 1);
    CHECK(gamma_of(2, 7).gamma == 2);
    CHECK(gamma_of(2, 9).gamma == 2);
    CHECK(gamma_of(4, 5).gamma == 4);
    CHECK(gamma_of(8, 17).gamma == 8);
    CHECK(gamma_of(12, 13).gamma == 12);
    CHECK(gamma_of(1, 49).gamma == 1);
}

TEST_CASE("power residues") {
    FieldCtx F4 = build_field(2, 2);
    PowerClass P = power_residues(F4, 3);
    CHECK(P.d == 3);
    CHECK(P.size_star == 1);
    CHECK(P.members.test(0));
    CHECK(P.members.test(1));
    CHECK(P.members.count() == 2);

    FieldCtx F7 = build_field(7, 1);
    PowerClass C = power_residues(F7, 3);
    CHECK(C.members.count() == 3);
    CHECK(C.members.test(0));
    CHECK(C.members.test(1));
    CHECK(C.members.test(6));
}

TEST_CASE("oracle agreement, both closure paths, q <= 121") {
    for (u64 q : prime_powers_upto(121)) {
        FieldCtx F = build_field_q(q);
        for (u64 k = 1; k <= 12; ++k) {
            NaiveResult N = naive_gamma(F, k);
            GammaResult fast = gamma_of(F, k);
            GammaResult slow = gamma_of(F, k, {.force_bitset = true});
            REQUIRE(fast.coverable == N.coverable);
            REQUIRE(slow.coverable == N.coverable);
            if (N.coverable) {
                REQUIRE(fast.gamma == N.gamma);
                REQUIRE(slow.gamma == N.gamma);
            }
            REQUIRE(fast.closure_sizes == N.sizes);
            REQUIRE(slow.closure_sizes == N.sizes);
        }
    }
}

TEST_CASE("closure size shape and covered-iff-d1 law") {
    for (u64 q : prime_powers_upto(121)) {
        for (u64 k = 1; k <= 12; ++k) {
            GammaResult r = gamma_of(k, q);
            u64 d = std::gcd(k, q - 1);
            REQUIRE((r.gamma == 1) == (d == 1));
            u64 strict = 0;
            for (std::size_t i = 1; i < r.closure_sizes.size(); ++i) {
                REQUIRE(r.closure_sizes[i] >= r.closure_sizes[i - 1]);
                if (r.closure_sizes[i] > r.closure_sizes[i - 1]) ++strict;
                if (r.closure_sizes[i] == r.closure_sizes[i - 1])
                    REQUIRE(i + 1 == r.closure_sizes.size());  // only the stabilized tail repeats
            }
            REQUIRE(strict + 1 <= d + 1);
            if (r.coverable) {
                REQUIRE(r.closure_sizes.back() == q);
                REQUIRE(r.closure_sizes.size() == r.gamma);
                REQUIRE(r.gamma <= d);
            } else {
                REQUIRE(r.closure_sizes.back() < q);
            }
        }
    }
}

TEST_CASE("uncoverable closures stabilize inside a proper subfield") {
    for (auto [k, q] : std::vector<std::pair<u64, u64>>{
             {3, 4}, {5, 16}, {6, 4}, {6, 25}, {8, 9}, {8, 49}, {12, 121}}) {
        FieldCtx F = build_field_q(q);
        NaiveResult N = naive_gamma(F, k);
        REQUIRE_FALSE(N.coverable);
        auto& S = N.final_set;
        for (u32 a : S)
            for (u32 b : S) {
                REQUIRE(S.count(F.add(a, b)) == 1);
                REQUIRE(S.count(F.mul(a, b)) == 1);
            }
        auto pp = as_prime_power(q);
        u32 t = 0;
        for (u64 sz = 1; sz < S.size(); sz *= pp->p) ++t;
        u64 expect = 1;
        for (u32 i = 0; i < t; ++i) expect *= pp->p;
        REQUIRE(expect == S.size());  // p^t elements
        REQUIRE(t < pp->e);
        REQUIRE(pp->e % t == 0);
    }
}

TEST_CASE("uncoverable field scans") {
    CHECK(uncoverable_fields(3) == std::vector<u64>{4});
    CHECK(uncoverable_fields(5, 5000) == std::vector<u64>{16});
    CHECK(uncoverable_fields(6, 2000) == std::vector<u64>{4, 25});
    CHECK(uncoverable_fields(7, 4096) == std::vector<u64>{8});
    CHECK(uncoverable_fields(2, 1000).empty());
}

TEST_CASE("gamma table filter") {
    auto rows = gamma_table(5, 100, {{5, 5}});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].q == 11);
    CHECK(rows[0].gamma == 5);
    auto all = gamma_table(3, 30);
    CHECK(all.size() == prime_powers_upto(30).size());
}

TEST_CASE("gamma max") {
    CHECK(gamma_max(1) == 1);
    CHECK(gamma_max(2) == 2);
    CHECK(gamma_max(3) == 3);
    CHECK(gamma_max(4) == 4);
    CHECK(gamma_max(5) == 5);
    CHECK(gamma_max(6) == 6);
    CHECK(gamma_max(7) == 4);
    CHECK(gamma_max(13) == 6);
    CHECK_THROWS_AS(gamma_max(21), DomainError);
}

TEST_CASE("footnote-level gamma values") {
    CHECK(gamma_of(4, 41).gamma == 2);
    CHECK(gamma_of(5, 71).gamma == 2);
    CHECK(gamma_of(5, 101).gamma == 2);
}

TEST_CASE("field decomposition minimal witnesses") {
    std::mt19937_64 rng(0x5eed0002);
    for (u64 q : prime_powers_upto(121)) {
        FieldCtx F = build_field_q(q);
        for (u64 k = 1; k <= 12; ++k) {
            NaiveResult N = naive_gamma(F, k);
            // level sets for minimality checking
            std::vector<std::set<u32>> levels;
            std::set<u32> R;
            for (u64 x = 0; x < F.q; ++x) R.insert(F.pow(u32(x), k));
            levels.push_back(R);
            while (levels.size() < 16 && levels.back().size() < F.q) {
                std::set<u32> next;
                for (u32 a : levels.back())
                    for (u32 r : R) next.insert(F.add(a, r));
                if (next.size() == levels.back().size()) break;
                levels.push_back(std::move(next));
            }
            for (int trial = 0; trial < 8; ++trial) {
                u32 target = u32(rng() % q);
                bool reachable = N.coverable || levels.back().count(target) == 1;
                if (!reachable) {
                    CHECK_THROWS_AS(decompose_in_field(F, k, target), DomainError);
                    continue;
                }
                auto wit = decompose_in_field(F, k, target);
                u32 sum = 0;
                for (u32 w : wit) sum = F.add(sum, F.pow(w, k));
                REQUIRE(sum == target);
                std::size_t minimal = 0;
                if (target == 0) {
                    minimal = 1;
                } else {
                    while (levels[minimal].count(target) == 0) ++minimal;
                    ++minimal;
                }
                REQUIRE(wit.size() == minimal);
            }
        }
    }
}

TEST_CASE("decompose worked example") {
    FieldCtx F7 = build_field(7, 1);
    auto wit = decompose_in_field(F7, 3, 3);
    REQUIRE(wit.size() == 3);
    u32 sum = 0;
    for (u32 w : wit) sum = F7.add(sum, F7.pow(w, 3));
    CHECK(sum == 3);
    CHECK(decompose_in_field(F7, 3, 0) == std::vector<u32>{0});
}
