#pragma once

#include <optional>
#include <vector>

#include "waring/util.hpp"

namespace waring {

struct PrimePower {
    u64 p;
    u32 e;
};

bool is_prime(u64 n);

// Prime factorization by trial division, ascending primes.
std::vector<PrimePower> factor(u64 n);

// q = p^s with p prime, s >= 1; nullopt when q is not a prime power.
std::optional<PrimePower> as_prime_power(u64 q);

// Ascending list of prime powers in [2, bound].
std::vector<u64> prime_powers_upto(u64 bound);

u64 mod_pow(u64 a, u64 e, u64 m);

// Inverse of a mod m; requires gcd(a, m) = 1.
u64 mod_inv(u64 a, u64 m);

// x with x = r[i] mod m[i]; moduli pairwise coprime, product must fit u64.
u64 crt(const std::vector<u64>& r, const std::vector<u64>& m);

// Product of the distinct prime divisors of n.
u64 radical_of(u64 n);

u64 mul_mod(u64 a, u64 b, u64 m);

}  // namespace waring
