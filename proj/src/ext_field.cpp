#include "waring/ext_field.hpp"

#include <algorithm>

namespace waring {

ExtField make_ext_field(const FieldCtx& F, Poly g, u64 cap) {
    g = p_monic(F, std::move(g));
    if (p_deg(g) < 1) fail("ParseError", "extension modulus must be nonconstant");
    if (!p_irreducible(F, g)) fail("NotIrreducible", "extension modulus factors over the base field");
    if (cap == 0) cap = u64(1) << 20;
    u32 d = u32(p_deg(g));
    u64 size = 1;
    for (u32 i = 0; i < d; ++i) {
        if (size > cap / F.q + 1) fail("CapExceeded", "extension field larger than the working cap");
        size *= F.q;
    }
    if (size > cap) fail("CapExceeded", "extension field larger than the working cap");
    return {&F, std::move(g), d, size};
}

u64 ef_code(const ExtField& E, const Poly& a) {
    Poly r = p_mod(*E.base, a, E.g);
    u64 code = 0;
    for (std::size_t i = r.size(); i-- > 0;) code = code * E.base->q + r[i];
    return code;
}

Poly ef_poly(const ExtField& E, u64 code) {
    Poly a;
    while (code) {
        a.push_back(u32(code % E.base->q));
        code /= E.base->q;
    }
    return a;
}

u64 ef_add(const ExtField& E, u64 a, u64 b) {
    u64 out = 0, mult = 1;
    for (u32 i = 0; i < E.ext_deg; ++i) {
        out += u64(E.base->add(u32(a % E.base->q), u32(b % E.base->q))) * mult;
        a /= E.base->q;
        b /= E.base->q;
        mult *= E.base->q;
    }
    return out;
}

u64 ef_neg(const ExtField& E, u64 a) {
    u64 out = 0, mult = 1;
    while (a) {
        out += u64(E.base->neg(u32(a % E.base->q))) * mult;
        a /= E.base->q;
        mult *= E.base->q;
    }
    return out;
}

u64 ef_mul(const ExtField& E, u64 a, u64 b) {
    return ef_code(E, p_mul(*E.base, ef_poly(E, a), ef_poly(E, b)));
}

u64 ef_inv(const ExtField& E, u64 a) {
    return ef_code(E, p_invmod(*E.base, ef_poly(E, a), E.g));
}

u64 ef_pow(const ExtField& E, u64 a, u64 e) {
    return ef_code(E, p_powmod(*E.base, ef_poly(E, a), e, E.g));
}

namespace {

// distances from 0 under steps by nonzero k-th powers; dist 0xFF = unreached
struct Closure {
    std::vector<u8> dist;
    std::vector<u64> parent_step;  // power used on the last step, valid where dist > 0
    std::vector<u64> powers;       // nonzero k-th powers
    bool full = false;
    u32 radius = 0;
};

Closure power_closure(const ExtField& E, u64 k, bool keep_parents) {
    Closure c;
    std::vector<u8> seen(E.size, 0);
    for (u64 a = 1; a < E.size; ++a) {
        u64 pk = ef_pow(E, a, k);
        if (!seen[pk]) {
            seen[pk] = 1;
            c.powers.push_back(pk);
        }
    }
    std::sort(c.powers.begin(), c.powers.end());
    c.dist.assign(E.size, 0xFF);
    if (keep_parents) c.parent_step.assign(E.size, 0);
    c.dist[0] = 0;
    std::vector<u64> frontier{0};
    u64 reached = 1;
    u32 level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<u64> next;
        for (u64 x : frontier) {
            for (u64 p : c.powers) {
                u64 y = ef_add(E, x, p);
                if (c.dist[y] == 0xFF) {
                    c.dist[y] = u8(level);
                    if (keep_parents) c.parent_step[y] = p;
                    next.push_back(y);
                    ++reached;
                }
            }
        }
        if (!next.empty()) c.radius = level;
        frontier = std::move(next);
    }
    c.full = reached == E.size;
    return c;
}

}  // namespace

ExtGamma ext_gamma(const ExtField& E, u64 k) {
    Closure c = power_closure(E, k, false);
    return {c.full, c.radius};
}

ExtDecomp ext_decompose(const ExtField& E, u64 k, const Poly& target) {
    u64 t = ef_code(E, target);
    if (t == 0) return {true, 0, 1, {Poly{}}};
    Closure c = power_closure(E, k, true);
    ExtDecomp out;
    out.coverable = c.full;
    out.gamma = c.radius;
    if (c.dist[t] == 0xFF) {
        out.m = 0;  // unreachable target
        return out;
    }
    out.m = c.dist[t];
    u64 x = t;
    while (x != 0) {
        u64 p = c.parent_step[x];
        // recover one preimage of the power used at this step
        u64 w = 0;
        for (u64 a = 1; a < E.size; ++a) {
            if (ef_pow(E, a, k) == p) {
                w = a;
                break;
            }
        }
        if (!w) fail("LiftMismatch", "closure step lost its preimage");
        out.witnesses.push_back(ef_poly(E, w));
        x = ef_add(E, x, ef_neg(E, p));
    }
    if (out.witnesses.size() != out.m) fail("LiftMismatch", "witness chain length drifted");
    return out;
}

}  // namespace waring
