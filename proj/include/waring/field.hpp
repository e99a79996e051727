#pragma once

#include <string>
#include <vector>

#include "waring/util.hpp"

namespace waring {

// F_q, q = p^s, as F_p[t]/(f) with f the canonical modulus: the
// lexicographically smallest monic irreducible of degree s, comparing
// coefficient vectors leading-to-constant as base-p integers.
//
// Elements are integer codes in [0, q): the base-p digits of a code are the
// coefficients of the residue polynomial, constant term least significant.
// The generator is the smallest code of multiplicative order q-1; log/antilog
// tables are built from it once per context.
struct FieldCtx {
    u64 p = 0;
    u32 s = 0;
    u64 q = 0;
    std::vector<u32> modulus;      // coefficients, constant first; monic of degree s
    u32 generator = 0;
    std::vector<u32> log_tab;      // code -> exponent; log_tab[0] is LOG_NONE
    std::vector<u32> antilog;      // exponent -> code, doubled to skip a mod
    std::vector<u32> trace_basis;  // trace of t^i, values in [0, p)

    static constexpr u32 LOG_NONE = 0xFFFFFFFFu;

    u32 add(u32 a, u32 b) const {
        if (p == 2) return a ^ b;
        if (s == 1) return u32((u64(a) + b) % p);
        u32 r = 0, m = 1;
        for (u32 i = 0; i < s; ++i) {
            u64 d = (a % p + b % p) % p;
            r += u32(d) * m;
            a /= u32(p);
            b /= u32(p);
            m *= u32(p);
        }
        return r;
    }

    u32 neg(u32 a) const {
        if (p == 2) return a;
        if (s == 1) return a ? u32(p - a) : 0;
        u32 r = 0, m = 1;
        for (u32 i = 0; i < s; ++i) {
            u64 d = a % p;
            r += u32(d ? p - d : 0) * m;
            a /= u32(p);
            m *= u32(p);
        }
        return r;
    }

    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        return antilog[log_tab[a] + log_tab[b]];
    }

    u32 inv(u32 a) const {
        if (a == 0) fail("DivisionByZero", "inverse of 0 in F_" + std::to_string(q));
        return antilog[(q - 1 - log_tab[a]) % (q - 1)];
    }

    u32 pow(u32 a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        u64 ex = (u64(log_tab[a]) * (e % (q - 1))) % (q - 1);
        return antilog[ex];
    }

    // Integer constant as an element of the prime subfield.
    u32 scalar(u64 c) const { return u32(c % p); }

    // Absolute trace to F_p, returned as a code in [0, p).
    u32 trace(u32 a) const {
        if (s == 1) return a;
        u64 acc = 0;
        for (u32 i = 0; i < s; ++i) {
            acc += u64(a % p) * trace_basis[i];
            a /= u32(p);
        }
        return u32(acc % p);
    }
};

// Builds the canonical context.  cap = 0 means the default 2^24, overridable
// through the WARING_SIZE_CAP environment variable.
FieldCtx build_field(u64 p, u32 s, u64 cap = 0);

// Same, from q directly; rejects non prime powers.
FieldCtx build_field_q(u64 q, u64 cap = 0);

u64 size_cap_default();

// Accepts an integer code or a polynomial in the generator symbol g,
// e.g. "g+1", "2g^2+g", "6".
u32 parse_element(const FieldCtx& F, const std::string& text);

std::string format_element(u32 code);

}  // namespace waring
