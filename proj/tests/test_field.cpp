#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "waring/field.hpp"
#include "waring/numbers.hpp"

using namespace waring;

namespace {

// Independent irreducibility oracle: trial division by every monic divisor
// candidate of degree at most s/2, schoolbook arithmetic over F_p.
using Poly = std::vector<u32>;  // constant first

Poly poly_rem(Poly a, const Poly& b, u64 p) {
    while (a.size() >= b.size() && !a.empty()) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
        u64 lead = a.back();
        u64 binv = mod_inv(b.back(), p);
        u64 c = lead * binv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = u32((a[shift + i] + p * p - c * b[i] % p) % p);
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool oracle_irreducible(const Poly& f, u64 p) {
    u32 s = u32(f.size() - 1);
    if (s == 1) return true;
    // all monic candidates of degree 1..s/2
    for (u32 deg = 1; deg * 2 <= s; ++deg) {
        u64 count = 1;
        for (u32 i = 0; i < deg; ++i) count *= p;
        for (u64 m = 0; m < count; ++m) {
            Poly div;
            u64 mm = m;
            for (u32 i = 0; i < deg; ++i) {
                div.push_back(u32(mm % p));
                mm /= p;
            }
            div.push_back(1);
            if (poly_rem(f, div, p).empty()) return false;
        }
    }
    return true;
}

Poly modulus_digits(u64 code, u64 p, u32 s) {
    Poly f;
    for (u32 i = 0; i < s; ++i) {
        f.push_back(u32(code % p));
        code /= p;
    }
    f.push_back(1);
    return f;
}

u64 low_code(const std::vector<u32>& modulus, u64 p) {
    u64 c = 0, m = 1;
    for (std::size_t i = 0; i + 1 < modulus.size(); ++i) {
        c += modulus[i] * m;
        m *= p;
    }
    return c;
}

}  // namespace

TEST_CASE("F4 worked example") {
    FieldCtx F = build_field(2, 2);
    CHECK(F.q == 4);
    CHECK(F.modulus == std::vector<u32>{1, 1, 1});  // t^2 + t + 1
    // elements 0,1,t,t+1 as codes 0..3
    CHECK(F.mul(2, 3) == 1);  // t(t+1) = t^2 + t = 1
    CHECK(F.pow(2, 2) == 3);  // t^2 = t + 1
    CHECK(F.trace(2) == 1);
    CHECK(F.generator == 2);
}

TEST_CASE("prime field and F9") {
    FieldCtx F7 = build_field(7, 1);
    CHECK(F7.q == 7);
    CHECK(F7.generator == 3);  // smallest primitive root mod 7
    CHECK(F7.mul(3, 5) == 1);
    CHECK(F7.add(6, 4) == 3);
    CHECK(F7.trace(5) == 5);

    FieldCtx F9 = build_field(3, 2);
    CHECK(F9.modulus == std::vector<u32>{1, 0, 1});  // t^2 + 1
    CHECK(F9.generator == 4);                        // 1 + t, order 8
    CHECK(F9.pow(4, 8) == 1);
    CHECK(F9.pow(4, 4) == 2);  // (1+t)^4 = -1
}

TEST_CASE("canonical modulus is the lexicographically smallest irreducible") {
    for (u64 q : {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169, 243, 256, 343, 512,
                  625, 729, 1024}) {
        auto pp = as_prime_power(q);
        REQUIRE(pp);
        FieldCtx F = build_field(pp->p, pp->e);
        Poly f(F.modulus.begin(), F.modulus.end());
        CHECK(oracle_irreducible(f, F.p));
        for (u64 below = 0; below < low_code(F.modulus, F.p); ++below)
            CHECK_FALSE(oracle_irreducible(modulus_digits(below, F.p, F.s), F.p));
    }
}

TEST_CASE("table round trips and field laws for q <= 4096") {
    std::mt19937_64 rng(0x5eed0001);
    for (u64 q : prime_powers_upto(4096)) {
        FieldCtx F = build_field_q(q);
        for (u64 x = 1; x < q; ++x) {
            REQUIRE(F.antilog[F.log_tab[x]] == x);
            REQUIRE(F.mul(u32(x), F.inv(u32(x))) == 1);
        }
        for (u64 e = 0; e + 1 < q; ++e) REQUIRE(F.log_tab[F.antilog[e]] == e);

        int triples = q <= 64 ? 200 : 40;
        for (int i = 0; i < triples; ++i) {
            u32 a = u32(rng() % q), b = u32(rng() % q), c = u32(rng() % q);
            REQUIRE(F.add(a, F.add(b, c)) == F.add(F.add(a, b), c));
            REQUIRE(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
            REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            REQUIRE(F.add(a, b) == F.add(b, a));
            REQUIRE(F.mul(a, b) == F.mul(b, a));
            REQUIRE(F.sub(F.add(a, b), b) == a);
        }
    }
}

TEST_CASE("frobenius is additive in characteristic 2") {
    for (u64 q : prime_powers_upto(1024)) {
        auto pp = as_prime_power(q);
        if (pp->p != 2) continue;
        FieldCtx F = build_field_q(q);
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b)
                REQUIRE(F.mul(F.add(u32(a), u32(b)), F.add(u32(a), u32(b))) ==
                        F.add(F.mul(u32(a), u32(a)), F.mul(u32(b), u32(b))));
    }
}

TEST_CASE("trace is additive, F_p valued, balanced") {
    for (u64 q : prime_powers_upto(256)) {
        FieldCtx F = build_field_q(q);
        std::vector<u64> hits(F.p, 0);
        for (u64 a = 0; a < q; ++a) {
            REQUIRE(F.trace(u32(a)) < F.p);
            ++hits[F.trace(u32(a))];
            for (u64 b = 0; b < q; ++b)
                REQUIRE(F.trace(F.add(u32(a), u32(b))) ==
                        u32((F.trace(u32(a)) + F.trace(u32(b))) % F.p));
        }
        for (u64 v = 0; v < F.p; ++v) REQUIRE(hits[v] == F.q / F.p);
    }
}

TEST_CASE("deterministic rebuild") {
    for (u64 q : {49, 64, 81, 2048}) {
        FieldCtx a = build_field_q(q);
        FieldCtx b = build_field_q(q);
        CHECK(a.modulus == b.modulus);
        CHECK(a.generator == b.generator);
        CHECK(a.log_tab == b.log_tab);
        CHECK(a.antilog == b.antilog);
    }
}

TEST_CASE("errors and caps") {
    CHECK_THROWS_WITH_AS(build_field(6, 1), doctest::Contains("not prime"), DomainError);
    CHECK_THROWS_AS(build_field(2, 30), DomainError);  // over the default cap
    CHECK_THROWS_AS(build_field_q(12), DomainError);
    FieldCtx F = build_field(5, 1);
    CHECK_THROWS_AS(F.inv(0), DomainError);
    CHECK(F.pow(0, 0) == 1);
    CHECK(F.pow(0, 3) == 0);
    try {
        build_field(11, 9);  // 11^9 far over the cap
        FAIL("expected SizeCapExceeded");
    } catch (const DomainError& e) {
        CHECK(e.name() == "SizeCapExceeded");
    }
}

TEST_CASE("element text round trip") {
    FieldCtx F4 = build_field(2, 2);
    CHECK(parse_element(F4, "g+1") == 3);
    CHECK(parse_element(F4, "g") == 2);
    CHECK(parse_element(F4, "1") == 1);
    FieldCtx F7 = build_field(7, 1);
    CHECK(parse_element(F7, "5") == 5);
    CHECK(parse_element(F7, "g") == 3);
    CHECK(parse_element(F7, "2g+1") == 0);   // 2*3 + 1 = 7 = 0
    CHECK(parse_element(F7, "g^2") == 2);    // 9 mod 7
    CHECK(parse_element(F7, "g^2-g") == 6);  // 2 - 3
    CHECK(format_element(5) == "5");
    CHECK_THROWS_AS(parse_element(F7, "7"), DomainError);
    CHECK_THROWS_AS(parse_element(F7, "x+1"), DomainError);
}
