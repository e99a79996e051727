#include "waring/gamma.hpp"

#include <numeric>

#include "waring/numbers.hpp"

namespace waring {
namespace {

// x + 1 touches only the constant base-p digit of a code.
inline u32 add_one(const FieldCtx& F, u32 x) {
    if (F.p == 2) return x ^ 1;
    u32 d0 = x % u32(F.p);
    return x - d0 + (d0 + 1 == F.p ? 0 : d0 + 1);
}

struct CosetClosure {
    u64 d = 0;
    u64 size_star = 0;
    std::vector<u8> coset_of;    // code -> index of its R_k* coset
    std::vector<u64> adj;        // adj[i]: cosets reached by C_i + C_0
    std::vector<u64> rounds;     // mask per round, rounds[0] = {C_0}
    bool covered = false;
    std::vector<u64> sizes;

    bool in_level(u32 x, std::size_t level) const {
        if (x == 0) return true;
        return (rounds[level] >> coset_of[x]) & 1;
    }
};

// Coset form of the sumset closure.  mR_k \ {0} is a union of cosets of
// R_k*, so one d-bit mask per round suffices; C_i + C_0 = R_k* (1 + g^i R_k*)
// gives the transition table in a single pass over F_q*.
CosetClosure coset_closure(const FieldCtx& F, u64 d) {
    CosetClosure C;
    C.d = d;
    C.size_star = (F.q - 1) / d;
    C.coset_of.assign(F.q, 0);
    for (u64 e = 0; e < F.q - 1; ++e) C.coset_of[F.antilog[e]] = u8(e % d);
    C.adj.assign(d, 0);
    for (u64 e = 0; e < F.q - 1; ++e) {
        u32 c = add_one(F, F.antilog[e]);
        if (c) C.adj[e % d] |= u64{1} << C.coset_of[c];
    }
    const u64 full = d == 64 ? ~u64{0} : (u64{1} << d) - 1;
    u64 S = 1;
    C.rounds.push_back(S);
    C.sizes.push_back(1 + C.size_star * u64(std::popcount(S)));
    while (true) {
        u64 N = S;
        u64 rest = S;
        while (rest) {
            N |= C.adj[std::countr_zero(rest)];
            rest &= rest - 1;
        }
        if (N == S) {
            C.sizes.push_back(C.sizes.back());
            C.covered = false;
            return C;
        }
        S = N;
        C.rounds.push_back(S);
        C.sizes.push_back(1 + C.size_star * u64(std::popcount(S)));
        if (S == full) {
            C.covered = true;
            return C;
        }
    }
}

GammaResult gamma_bitset(const FieldCtx& F, u64 k, u64 d) {
    GammaResult R;
    R.k = k;
    R.q = F.q;
    R.d = d;
    std::vector<u32> star;
    star.reserve((F.q - 1) / d);
    for (u64 e = 0; e < F.q - 1; e += d) star.push_back(F.antilog[e]);
    DynBitset cur(F.q);
    cur.set(0);
    for (u32 r : star) cur.set(r);
    R.closure_sizes.push_back(cur.count());
    while (true) {
        DynBitset next = cur;
        cur.for_each([&](u64 x) {
            for (u32 r : star) next.set(F.add(u32(x), r));
        });
        u64 n = next.count();
        R.closure_sizes.push_back(n);
        if (n == cur.count()) {
            R.coverable = false;
            return R;
        }
        cur = std::move(next);
        if (n == F.q) {
            R.coverable = true;
            R.gamma = u32(R.closure_sizes.size());
            return R;
        }
    }
}

}  // namespace

PowerClass power_residues(const FieldCtx& F, u64 k) {
    if (k < 1) fail("InvalidK", "k must be at least 1");
    PowerClass P;
    P.k = k;
    P.d = std::gcd(k, F.q - 1);
    P.size_star = (F.q - 1) / P.d;
    P.members = DynBitset(F.q);
    P.members.set(0);
    for (u64 e = 0; e < F.q - 1; e += P.d) P.members.set(F.antilog[e]);
    return P;
}

GammaResult gamma_of(const FieldCtx& F, u64 k, const GammaOptions& opt) {
    if (k < 1) fail("InvalidK", "k must be at least 1");
    GammaResult R;
    R.k = k;
    R.q = F.q;
    u64 d = std::gcd(k, F.q - 1);
    R.d = d;
    if (d == 1) {
        R.coverable = true;
        R.gamma = 1;
        R.closure_sizes.push_back(F.q);
        return R;
    }
    if (d > 64 || opt.force_bitset) return gamma_bitset(F, k, d);
    CosetClosure C = coset_closure(F, d);
    R.closure_sizes = C.sizes;
    R.coverable = C.covered;
    if (C.covered) R.gamma = u32(C.sizes.size());
    return R;
}

GammaResult gamma_of(u64 k, u64 q, const GammaOptions& opt, u64 cap) {
    FieldCtx F = build_field_q(q, cap);
    return gamma_of(F, k, opt);
}

std::vector<u64> uncoverable_fields(u64 k, u64 bound) {
    if (k < 1) fail("InvalidK", "k must be at least 1");
    if (bound == 0) bound = 8 * k * k * k * k;
    std::vector<u64> out;
    for (u64 q : prime_powers_upto(bound)) {
        if (!gamma_of(k, q).coverable) out.push_back(q);
    }
    return out;
}

std::vector<GammaResult> gamma_table(u64 k, u64 q_max,
                                     std::optional<std::pair<u32, u32>> filter) {
    std::vector<GammaResult> out;
    for (u64 q : prime_powers_upto(q_max)) {
        GammaResult r = gamma_of(k, q);
        if (filter) {
            if (!r.coverable || r.gamma < filter->first || r.gamma > filter->second) continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

u32 gamma_max(u64 k, u64 k_cap) {
    if (k < 1) fail("InvalidK", "k must be at least 1");
    if (k > k_cap)
        fail("CapExceeded", "k = " + std::to_string(k) + " above the runtime cap " +
                                std::to_string(k_cap));
    if (k == 1) return 1;
    u32 best = 0;
    for (u64 q : prime_powers_upto(k * k * k * k)) {
        GammaResult r = gamma_of(k, q);
        if (r.coverable && r.gamma > best) best = r.gamma;
    }
    return best;
}

std::vector<u32> decompose_in_field(const FieldCtx& F, u64 k, u32 target) {
    if (k < 1) fail("InvalidK", "k must be at least 1");
    if (target == 0) return {0};
    const u64 q = F.q;
    u64 d = std::gcd(k, q - 1);
    u64 kr = k % (q - 1);

    // x with x^k = g^e, for e a multiple of d
    auto root_of = [&](u64 e) -> u32 {
        if (kr == 0) return 1;  // star is {1}, e = 0
        u64 M = (q - 1) / d;
        u64 y = mul_mod((e / d) % M, mod_inv((kr / d) % M, M), M);
        return F.antilog[y];
    };

    if (d == 1) {
        if (q == 2) return {target};
        u64 y = mul_mod(F.log_tab[target], mod_inv(kr, q - 1), q - 1);
        return {F.antilog[y]};
    }

    if (d <= 64) {
        CosetClosure C = coset_closure(F, d);
        std::size_t m = C.rounds.size();
        bool found = false;
        for (std::size_t i = 0; i < C.rounds.size(); ++i)
            if (C.in_level(target, i)) {
                m = i;
                found = true;
                break;
            }
        if (!found)
            fail("TargetUnreachable", "element " + std::to_string(target) +
                                          " is outside the stabilized closure");
        // Peel one k-th power per level.  cur in (level+1)R_k \ (level)R_k
        // guarantees a nonzero peel; otherwise pad with 0^k.
        std::vector<u32> wit;
        u32 cur = target;
        for (std::size_t level = m; level >= 1; --level) {
            if (C.in_level(cur, level - 1)) {
                wit.push_back(0);
                continue;
            }
            bool hit = false;
            for (u64 e = 0; e < q - 1 && !hit; e += d) {
                u32 r = F.antilog[e];
                u32 rest = F.sub(cur, r);
                if (C.in_level(rest, level - 1)) {
                    wit.push_back(root_of(e));
                    cur = rest;
                    hit = true;
                }
            }
            if (!hit) fail("TargetUnreachable", "closure peel failed unexpectedly");
        }
        wit.push_back(cur == 0 ? 0 : root_of(F.log_tab[cur]));
        return wit;
    }

    // d > 64: store the closure levels as plain bitsets
    std::vector<u32> star;
    for (u64 e = 0; e < q - 1; e += d) star.push_back(F.antilog[e]);
    std::vector<DynBitset> levels;
    {
        DynBitset cur(q);
        cur.set(0);
        for (u32 r : star) cur.set(r);
        levels.push_back(cur);
        while (!levels.back().test(target)) {
            DynBitset next = levels.back();
            levels.back().for_each([&](u64 x) {
                for (u32 r : star) next.set(F.add(u32(x), r));
            });
            if (next.count() == levels.back().count())
                fail("TargetUnreachable", "element " + std::to_string(target) +
                                              " is outside the stabilized closure");
            levels.push_back(std::move(next));
        }
    }
    std::vector<u32> wit;
    u32 cur = target;
    for (std::size_t level = levels.size(); level-- > 1;) {
        if (levels[level - 1].test(cur)) {
            wit.push_back(0);
            continue;
        }
        bool hit = false;
        for (u64 e = 0; e < q - 1 && !hit; e += d) {
            u32 r = F.antilog[e];
            u32 rest = F.sub(cur, r);
            if (levels[level - 1].test(rest)) {
                wit.push_back(root_of(e));
                cur = rest;
                hit = true;
            }
        }
        if (!hit) fail("TargetUnreachable", "closure peel failed unexpectedly");
    }
    wit.push_back(cur == 0 ? 0 : root_of(F.log_tab[cur]));
    return wit;
}

}  // namespace waring
