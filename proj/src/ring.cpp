#include "waring/ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "waring/ext_field.hpp"
#include "waring/gamma.hpp"

namespace waring {

namespace {

constexpr u64 kOrderCap = u64{1} << 62;   // construction guard
constexpr u64 kTableCap = 4096;           // materialized operation tables
constexpr u64 kBruteCap = 4096;           // exhaustive search paths
constexpr u64 kRadicalScanCap = 256;      // table-ring radical criterion

using Zn = RingSpec::Zn;
using PolyQuotient = RingSpec::PolyQuotient;
using Product = RingSpec::Product;
using TableRing = RingSpec::TableRing;

u64 pq_width(const PolyQuotient& pq) { return u64(pq.e) * u64(p_deg(pq.f)); }

Poly pq_modulus(const PolyQuotient& pq) { return p_powu(*pq.field, pq.f, pq.e); }

Poly pq_poly(const PolyQuotient& pq, u64 code) {
    Poly out;
    u64 q = pq.field->q;
    while (code) {
        out.push_back(u32(code % q));
        code /= q;
    }
    p_trim(out);
    return out;
}

u64 pq_code(const PolyQuotient& pq, const Poly& a) {
    u64 q = pq.field->q, code = 0;
    for (std::size_t i = a.size(); i-- > 0;) code = code * q + a[i];
    return code;
}

std::size_t t_at(const TableRing& t, u64 a, u64 b) { return std::size_t(a) * t.order + b; }

}  // namespace

RingSpec make_zn(u64 n) {
    if (n < 2) fail("OutOfRange", "Zn needs n >= 2, got " + std::to_string(n));
    if (n > kOrderCap) fail("CapExceeded", "ring order exceeds the supported range");
    return RingSpec{Zn{n}};
}

RingSpec make_polyq(std::shared_ptr<FieldCtx> field, Poly f, u32 e) {
    if (!field) fail("OutOfRange", "PolyQuotient needs a coefficient field");
    if (p_deg(f) < 1) fail("OutOfRange", "PolyQuotient modulus must be nonconstant");
    if (p_lead(f) != 1) fail("OutOfRange", "PolyQuotient modulus must be monic");
    if (!p_irreducible(*field, f)) fail("OutOfRange", "PolyQuotient modulus must be irreducible");
    if (e < 1) fail("OutOfRange", "PolyQuotient exponent must be positive");
    u64 order = 1;
    u64 width = u64(e) * u64(p_deg(f));
    for (u64 i = 0; i < width; ++i) {
        if (order > kOrderCap / field->q)
            fail("CapExceeded", "ring order exceeds the supported range");
        order *= field->q;
    }
    return RingSpec{PolyQuotient{std::move(field), std::move(f), e}};
}

RingSpec make_product(std::vector<RingSpec> parts) {
    if (parts.empty()) fail("OutOfRange", "Product needs at least one part");
    u64 order = 1;
    for (const RingSpec& part : parts) {
        u64 o = r_order(part);
        if (order > kOrderCap / o) fail("CapExceeded", "ring order exceeds the supported range");
        order *= o;
    }
    return RingSpec{Product{std::move(parts)}};
}

RingSpec make_table_ring(u32 order, std::vector<u16> add, std::vector<u16> mul, u16 one) {
    if (order < 1 || order > kTableCap)
        fail("CapExceeded", "table ring order must be in 1.." + std::to_string(kTableCap));
    if (add.size() != std::size_t(order) * order || mul.size() != std::size_t(order) * order)
        fail("OutOfRange", "operation tables must be order x order");
    for (u16 x : add)
        if (x >= order) fail("OutOfRange", "addition table entry out of range");
    for (u16 x : mul)
        if (x >= order) fail("OutOfRange", "multiplication table entry out of range");
    TableRing t;
    t.order = order;
    t.add = std::move(add);
    t.mul = std::move(mul);
    t.one = one;

    bool found_zero = false;
    for (u32 z = 0; z < order && !found_zero; ++z) {
        bool ok = true;
        for (u32 x = 0; x < order && ok; ++x) ok = t.add[t_at(t, z, x)] == x;
        if (ok) {
            t.zero = u16(z);
            found_zero = true;
        }
    }
    if (!found_zero) fail("OutOfRange", "addition table has no identity");

    t.neg.assign(order, 0);
    for (u32 a = 0; a < order; ++a) {
        bool ok = false;
        for (u32 x = 0; x < order && !ok; ++x)
            if (t.add[t_at(t, a, x)] == t.zero) {
                t.neg[a] = u16(x);
                ok = true;
            }
        if (!ok) fail("OutOfRange", "addition table is not a group");
    }

    if (one >= order) fail("OutOfRange", "unit element out of range");
    for (u32 x = 0; x < order; ++x)
        if (t.mul[t_at(t, t.one, x)] != x || t.mul[t_at(t, x, t.one)] != x)
            fail("OutOfRange", "unit element is not a two-sided identity");
    return RingSpec{std::move(t)};
}

u64 r_order(const RingSpec& R) {
    if (auto* z = std::get_if<Zn>(&R.v)) return z->n;
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        u64 order = 1;
        for (u64 i = 0, w = pq_width(*pq); i < w; ++i) order *= pq->field->q;
        return order;
    }
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 order = 1;
        for (const RingSpec& part : pr->parts) order *= r_order(part);
        return order;
    }
    return std::get<TableRing>(R.v).order;
}

u64 r_zero(const RingSpec& R) {
    if (auto* t = std::get_if<TableRing>(&R.v)) return t->zero;
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            out += r_zero(part) * base;
            base *= r_order(part);
        }
        return out;
    }
    return 0;
}

u64 r_one(const RingSpec& R) {
    if (auto* t = std::get_if<TableRing>(&R.v)) return t->one;
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            out += r_one(part) * base;
            base *= r_order(part);
        }
        return out;
    }
    return 1;
}

u64 r_add(const RingSpec& R, u64 a, u64 b) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        u64 s = a + b;
        return s >= z->n ? s - z->n : s;
    }
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return pq_code(*pq, p_add(*pq->field, pq_poly(*pq, a), pq_poly(*pq, b)));
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            out += r_add(part, a % o, b % o) * base;
            base *= o;
            a /= o;
            b /= o;
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    return t.add[t_at(t, a, b)];
}

u64 r_neg(const RingSpec& R, u64 a) {
    if (auto* z = std::get_if<Zn>(&R.v)) return a ? z->n - a : 0;
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return pq_code(*pq, p_neg(*pq->field, pq_poly(*pq, a)));
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            out += r_neg(part, a % o) * base;
            base *= o;
            a /= o;
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    return t.neg[a];
}

u64 r_sub(const RingSpec& R, u64 a, u64 b) { return r_add(R, a, r_neg(R, b)); }

u64 r_mul(const RingSpec& R, u64 a, u64 b) {
    if (auto* z = std::get_if<Zn>(&R.v)) return mul_mod(a, b, z->n);
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return pq_code(*pq, p_mulmod(*pq->field, pq_poly(*pq, a), pq_poly(*pq, b), pq_modulus(*pq)));
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            out += r_mul(part, a % o, b % o) * base;
            base *= o;
            a /= o;
            b /= o;
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    return t.mul[t_at(t, a, b)];
}

u64 r_pow(const RingSpec& R, u64 a, u64 e) {
    u64 out = r_one(R);
    while (e) {
        if (e & 1) out = r_mul(R, out, a);
        a = r_mul(R, a, a);
        e >>= 1;
    }
    return out;
}

bool r_is_unit(const RingSpec& R, u64 a) {
    if (auto* z = std::get_if<Zn>(&R.v)) return std::gcd(a, z->n) == 1;
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return !p_is_zero(p_mod(*pq->field, pq_poly(*pq, a), pq->f));
    if (auto* pr = std::get_if<Product>(&R.v)) {
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            if (!r_is_unit(part, a % o)) return false;
            a /= o;
        }
        return true;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    for (u32 b = 0; b < t.order; ++b)
        if (t.mul[t_at(t, a, b)] == t.one && t.mul[t_at(t, b, a)] == t.one) return true;
    return false;
}

u64 r_inv(const RingSpec& R, u64 a) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        if (std::gcd(a, z->n) != 1) fail("NotAUnit", std::to_string(a) + " is not a unit");
        return mod_inv(a, z->n);
    }
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        Poly pa = pq_poly(*pq, a);
        if (p_is_zero(p_mod(*pq->field, pa, pq->f)))
            fail("NotAUnit", "element " + std::to_string(a) + " is not a unit");
        return pq_code(*pq, p_invmod(*pq->field, pa, pq_modulus(*pq)));
    }
    if (auto* pr = std::get_if<Product>(&R.v)) {
        u64 out = 0, base = 1;
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            out += r_inv(part, a % o) * base;
            base *= o;
            a /= o;
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    for (u32 b = 0; b < t.order; ++b)
        if (t.mul[t_at(t, a, b)] == t.one && t.mul[t_at(t, b, a)] == t.one) return b;
    fail("NotAUnit", "element " + std::to_string(a) + " is not a unit");
}

bool r_commutative(const RingSpec& R) {
    if (auto* pr = std::get_if<Product>(&R.v)) {
        for (const RingSpec& part : pr->parts)
            if (!r_commutative(part)) return false;
        return true;
    }
    if (auto* t = std::get_if<TableRing>(&R.v)) {
        for (u32 a = 0; a < t->order; ++a)
            for (u32 b = a + 1; b < t->order; ++b)
                if (t->mul[t_at(*t, a, b)] != t->mul[t_at(*t, b, a)]) return false;
        return true;
    }
    return true;
}

namespace {

std::vector<char> table_unit_mask(const TableRing& t) {
    std::vector<char> unit(t.order, 0);
    for (u32 a = 0; a < t.order; ++a)
        for (u32 b = 0; b < t.order; ++b)
            if (t.mul[t_at(t, a, b)] == t.one && t.mul[t_at(t, b, a)] == t.one) {
                unit[a] = 1;
                break;
            }
    return unit;
}

// x is radical iff 1 + r*x*s is a unit for every r, s.
bool table_in_radical(const TableRing& t, const std::vector<char>& unit, u32 x) {
    for (u32 r = 0; r < t.order; ++r)
        for (u32 s = 0; s < t.order; ++s) {
            u32 y = t.add[t_at(t, t.one, t.mul[t_at(t, t.mul[t_at(t, r, x)], s)])];
            if (!unit[y]) return false;
        }
    return true;
}

// Additive subgroup generated by gens (finiteness supplies inverses).
std::vector<char> additive_span(const TableRing& t, const std::vector<u32>& gens) {
    std::vector<char> in(t.order, 0);
    std::vector<u32> work;
    in[t.zero] = 1;
    work.push_back(t.zero);
    for (std::size_t i = 0; i < work.size(); ++i)
        for (u32 g : gens) {
            u32 s = t.add[t_at(t, work[i], g)];
            if (!in[s]) {
                in[s] = 1;
                work.push_back(s);
            }
        }
    return in;
}

}  // namespace

bool r_in_radical(const RingSpec& R, u64 a) {
    if (auto* z = std::get_if<Zn>(&R.v)) return a % radical_of(z->n) == 0;
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return p_is_zero(p_mod(*pq->field, pq_poly(*pq, a), pq->f));
    if (auto* pr = std::get_if<Product>(&R.v)) {
        for (const RingSpec& part : pr->parts) {
            u64 o = r_order(part);
            if (!r_in_radical(part, a % o)) return false;
            a /= o;
        }
        return true;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    if (t.order > kRadicalScanCap)
        fail("CapExceeded", "table ring radical scan is capped at order " +
                                std::to_string(kRadicalScanCap));
    return table_in_radical(t, table_unit_mask(t), u32(a));
}

RadicalDescription jacobson_radical(const RingSpec& R) {
    RadicalDescription out;
    if (auto* z = std::get_if<Zn>(&R.v)) {
        u64 rad = radical_of(z->n);
        out.size = z->n / rad;
        out.nilpotency = 1;
        for (const PrimePower& pp : factor(z->n)) out.nilpotency = std::max<u64>(out.nilpotency, pp.e);
        if (rad != z->n) out.generators.push_back(rad);
        return out;
    }
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        if (pq->e > 1) {
            out.generators.push_back(pq_code(*pq, pq->f));
            out.nilpotency = pq->e;
            u64 size = 1;
            for (u64 i = 0, w = u64(pq->e - 1) * u64(p_deg(pq->f)); i < w; ++i)
                size *= pq->field->q;
            out.size = size;
        }
        return out;
    }
    if (auto* pr = std::get_if<Product>(&R.v)) {
        std::vector<u64> bases(pr->parts.size());
        u64 base = 1;
        for (std::size_t i = 0; i < pr->parts.size(); ++i) {
            bases[i] = base;
            base *= r_order(pr->parts[i]);
        }
        for (std::size_t i = 0; i < pr->parts.size(); ++i) {
            RadicalDescription part = jacobson_radical(pr->parts[i]);
            out.nilpotency = std::max(out.nilpotency, part.nilpotency);
            out.size *= part.size;
            for (u64 g : part.generators) {
                u64 embed = 0;
                for (std::size_t j = 0; j < pr->parts.size(); ++j)
                    embed += (j == i ? g : r_zero(pr->parts[j])) * bases[j];
                out.generators.push_back(embed);
            }
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    if (t.order > kRadicalScanCap)
        fail("CapExceeded", "table ring radical scan is capped at order " +
                                std::to_string(kRadicalScanCap));
    std::vector<char> unit = table_unit_mask(t);
    std::vector<u32> members;
    for (u32 x = 0; x < t.order; ++x)
        if (x != t.zero && table_in_radical(t, unit, x)) members.push_back(x);
    out.size = members.size() + 1;
    for (u32 m : members) out.generators.push_back(m);

    // Power the ideal until it collapses; each round is an exact computation.
    std::vector<u32> cur = members;
    out.nilpotency = 1;
    while (!cur.empty()) {
        std::vector<u32> prods;
        prods.reserve(cur.size() * members.size());
        for (u32 a : cur)
            for (u32 b : members) prods.push_back(u32(t.mul[t_at(t, a, b)]));
        std::vector<char> span = additive_span(t, prods);
        cur.clear();
        for (u32 x = 0; x < t.order; ++x)
            if (span[x] && x != t.zero) cur.push_back(x);
        ++out.nilpotency;
        if (out.nilpotency > u64(t.order) + 1)
            fail("CapExceeded", "radical power chain failed to terminate");
    }
    return out;
}

namespace {

u64 r_smul(const RingSpec& R, u64 m, u64 x) {
    u64 out = r_zero(R);
    while (m) {
        if (m & 1) out = r_add(R, out, x);
        x = r_add(R, x, x);
        m >>= 1;
    }
    return out;
}

u64 poly_eval_ring(const RingSpec& R, const std::vector<u64>& c, u64 x) {
    u64 acc = r_zero(R);
    for (std::size_t i = c.size(); i-- > 0;) acc = r_add(R, r_mul(R, acc, x), c[i]);
    return acc;
}

}  // namespace

u64 radical_hensel(const RingSpec& R, const std::vector<u64>& coeffs, u64 a0) {
    std::vector<u64> dc(coeffs.size() > 1 ? coeffs.size() - 1 : 0, r_zero(R));
    for (std::size_t i = 1; i < coeffs.size(); ++i) dc[i - 1] = r_smul(R, i, coeffs[i]);

    u64 zero = r_zero(R);
    u64 value = poly_eval_ring(R, coeffs, a0);
    if (!r_in_radical(R, value))
        fail("NoRootModJ", "seed is not a root modulo the radical");
    if (!r_is_unit(R, poly_eval_ring(R, dc, a0)))
        fail("DerivativeNotUnit", "derivative at the seed is not a unit");

    u64 root = a0;
    u64 l = jacobson_radical(R).nilpotency;
    for (u64 it = 0; it < l && value != zero; ++it) {
        u64 slope = poly_eval_ring(R, dc, root);
        root = r_sub(R, root, r_mul(R, value, r_inv(R, slope)));
        value = poly_eval_ring(R, coeffs, root);
    }
    if (value != zero) fail("LiftMismatch", "newton iteration did not reach an exact root");
    return root;
}

namespace {

// Sumset closure of the k-th powers from zero.  dist[x] is the least number
// of k-th powers summing to x; via[x] remembers the power index used at
// discovery so witnesses can be walked back.
struct PowerBfs {
    std::vector<u64> powers, preim;
    std::vector<u16> dist;
    std::vector<u32> via;
    bool all = false;
    u32 radius = 0;
};

constexpr u16 kUnset = 0xFFFF;

PowerBfs power_bfs_generic(const RingSpec& R, u64 k, u64 order) {
    PowerBfs B;
    B.dist.assign(order, kUnset);
    B.via.assign(order, 0);
    std::vector<char> seen(order, 0);
    for (u64 x = 0; x < order; ++x) {
        u64 px = r_pow(R, x, k);
        if (!seen[px]) {
            seen[px] = 1;
            B.powers.push_back(px);
            B.preim.push_back(x);
        }
    }
    u64 zero = r_zero(R);
    std::vector<u64> frontier{zero};
    B.dist[zero] = 0;
    u64 reached = 1;
    u16 d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<u64> next;
        for (u64 s : frontier)
            for (std::size_t pi = 0; pi < B.powers.size(); ++pi) {
                u64 tgt = r_add(R, s, B.powers[pi]);
                if (B.dist[tgt] == kUnset) {
                    B.dist[tgt] = d;
                    B.via[tgt] = u32(pi);
                    next.push_back(tgt);
                    ++reached;
                }
            }
        if (!next.empty()) B.radius = d;
        frontier = std::move(next);
    }
    B.all = reached == order;
    return B;
}

PowerBfs power_bfs_zn(u64 n, u64 k) {
    PowerBfs B;
    B.dist.assign(n, kUnset);
    B.via.assign(n, 0);
    std::vector<char> seen(n, 0);
    for (u64 x = 0; x < n; ++x) {
        u64 px = mod_pow(x, k, n);
        if (!seen[px]) {
            seen[px] = 1;
            B.powers.push_back(px);
            B.preim.push_back(x);
        }
    }
    std::vector<u32> frontier{0};
    B.dist[0] = 0;
    u64 reached = 1;
    u16 d = 0;
    while (!frontier.empty()) {
        ++d;
        std::vector<u32> next;
        for (u32 s : frontier)
            for (std::size_t pi = 0; pi < B.powers.size(); ++pi) {
                u64 tgt = s + B.powers[pi];
                if (tgt >= n) tgt -= n;
                if (B.dist[tgt] == kUnset) {
                    B.dist[tgt] = d;
                    B.via[tgt] = u32(pi);
                    next.push_back(u32(tgt));
                    ++reached;
                }
            }
        if (!next.empty()) B.radius = d;
        frontier = std::move(next);
    }
    B.all = reached == n;
    return B;
}

PowerBfs power_bfs(const RingSpec& R, u64 k, u64 order) {
    if (auto* z = std::get_if<Zn>(&R.v)) return power_bfs_zn(z->n, k);
    return power_bfs_generic(R, k, order);
}

}  // namespace

BruteWaring brute_force_waring(const RingSpec& R, u64 k) {
    if (k == 0) fail("OutOfRange", "k must be positive");
    u64 order = r_order(R);
    if (order > kBruteCap)
        fail("CapExceeded", "brute-force cap is " + std::to_string(kBruteCap) +
                                " elements, ring has " + std::to_string(order));
    PowerBfs B = power_bfs(R, k, order);
    BruteWaring out;
    out.coverable = B.all;
    out.n = B.all ? B.radius : 0;
    return out;
}

namespace {

// One residue-field coordinate of the semisimple quotient.  Zn contributes a
// slot per prime factor; a PolyQuotient contributes one slot.
struct Slot {
    bool zn = false;
    u64 p = 0, pe = 0;
    u32 e = 1;
    std::shared_ptr<FieldCtx> Fp;       // residue field when zn
    const PolyQuotient* pq = nullptr;   // borrowed from the ring-spec tree
    std::shared_ptr<ExtField> E;        // residue field when polynomial
};

bool collect_slots(const RingSpec& R, std::vector<Slot>& out) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        for (const PrimePower& pp : factor(z->n)) {
            Slot s;
            s.zn = true;
            s.p = pp.p;
            s.e = pp.e;
            s.pe = 1;
            for (u32 i = 0; i < pp.e; ++i) s.pe *= pp.p;
            s.Fp = std::make_shared<FieldCtx>(build_field(pp.p, 1));
            out.push_back(std::move(s));
        }
        return true;
    }
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        Slot s;
        s.pq = pq;
        s.e = pq->e;
        s.E = std::make_shared<ExtField>(make_ext_field(*pq->field, pq->f));
        out.push_back(std::move(s));
        return true;
    }
    if (auto* pr = std::get_if<Product>(&R.v)) {
        for (const RingSpec& part : pr->parts)
            if (!collect_slots(part, out)) return false;
        return true;
    }
    return false;
}

// Local indices in collect_slots order.
void split_indices(const RingSpec& R, u64 a, std::vector<u64>& out) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        for (const PrimePower& pp : factor(z->n)) {
            u64 pe = 1;
            for (u32 i = 0; i < pp.e; ++i) pe *= pp.p;
            out.push_back(a % pe);
        }
        return;
    }
    if (std::get_if<PolyQuotient>(&R.v)) {
        out.push_back(a);
        return;
    }
    const Product& pr = std::get<Product>(R.v);
    for (const RingSpec& part : pr.parts) {
        u64 o = r_order(part);
        split_indices(part, a % o, out);
        a /= o;
    }
}

u64 join_indices(const RingSpec& R, const std::vector<u64>& vals, std::size_t& cur) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        std::vector<u64> res, mods;
        for (const PrimePower& pp : factor(z->n)) {
            u64 pe = 1;
            for (u32 i = 0; i < pp.e; ++i) pe *= pp.p;
            res.push_back(vals[cur++]);
            mods.push_back(pe);
        }
        return crt(res, mods);
    }
    if (std::get_if<PolyQuotient>(&R.v)) return vals[cur++];
    const Product& pr = std::get<Product>(R.v);
    u64 out = 0, base = 1;
    for (const RingSpec& part : pr.parts) {
        out += join_indices(part, vals, cur) * base;
        base *= r_order(part);
    }
    return out;
}

// Minimal residue-field witnesses for one slot, as canonical lifts into the
// local ring.  res_zero reports a zero projected target.
std::vector<u64> slot_witnesses(const Slot& s, u64 local, u64 k, bool& res_zero) {
    if (s.zn) {
        u32 res = u32(local % s.p);
        res_zero = res == 0;
        std::vector<u32> w;
        try {
            w = decompose_in_field(*s.Fp, k, res);
        } catch (const DomainError& err) {
            if (err.name() == "TargetUnreachable")
                fail("ResidueFieldUncoverable",
                     "residue field of size " + std::to_string(s.p) +
                         " cannot express the projected target");
            throw;
        }
        return std::vector<u64>(w.begin(), w.end());
    }
    const FieldCtx& F = *s.pq->field;
    Poly res = p_mod(F, pq_poly(*s.pq, local), s.pq->f);
    res_zero = p_is_zero(res);
    ExtDecomp d = ext_decompose(*s.E, k, res);
    if (!d.coverable)
        fail("ResidueFieldUncoverable", "residue field of size " + std::to_string(s.E->size) +
                                            " cannot express the projected target");
    std::vector<u64> out;
    out.reserve(d.witnesses.size());
    for (const Poly& P : d.witnesses) out.push_back(pq_code(*s.pq, P));
    return out;
}

// Canonical lifts of 1 and -1 in a slot.
u64 slot_one(const Slot&) { return 1; }

u64 slot_neg_one(const Slot& s) {
    if (s.zn) return s.p - 1;
    return pq_code(*s.pq, p_const(s.pq->field->neg(1)));
}

// Representation of -1 in the slot's residue field, lifted canonically.
std::vector<u64> slot_neg_one_witnesses(const Slot& s, u64 k) {
    bool dummy = false;
    return slot_witnesses(s, slot_neg_one(s), k, dummy);
}

RingDecomposition decompose_table_backed(const RingSpec& R, u64 alpha, u64 k) {
    u64 order = r_order(R);
    if (order > kBruteCap)
        fail("CapExceeded", "exhaustive decomposition is capped at " +
                                std::to_string(kBruteCap) + " elements");
    PowerBfs B = power_bfs(R, k, order);
    if (B.dist[alpha] == kUnset)
        fail("ResidueFieldUncoverable", "target is not a sum of k-th powers in this ring");
    RingDecomposition out{alpha, k, {}};
    u64 cur = alpha, zero = r_zero(R);
    while (cur != zero) {
        u32 pi = B.via[cur];
        out.witnesses.push_back(B.preim[pi]);
        cur = r_sub(R, cur, B.powers[pi]);
    }
    return out;
}

}  // namespace

RingDecomposition decompose_ring_element(const RingSpec& R, u64 alpha, u64 k) {
    if (k == 0) fail("OutOfRange", "k must be positive");
    if (k > (u64{1} << 20)) fail("OutOfRange", "k is beyond the supported range");
    u64 order = r_order(R);
    if (alpha >= order) fail("OutOfRange", "element index out of range");
    if (!r_commutative(R)) fail("NonCommutative", "decomposition needs a commutative ring");
    u64 g = std::gcd(order, k);
    if (g != 1)
        fail("GcdViolation", "gcd(|R|, k) = " + std::to_string(g) + " must be 1");

    RingDecomposition out{alpha, k, {}};
    if (alpha == r_zero(R)) {
        out.witnesses = {r_zero(R)};
        return out;
    }

    std::vector<Slot> slots;
    if (!collect_slots(R, slots)) {
        out = decompose_table_backed(R, alpha, k);
        if (!verify_ring_decomposition(R, out))
            fail("LiftMismatch", "searched decomposition failed verification");
        return out;
    }

    std::vector<u64> locals;
    split_indices(R, alpha, locals);

    std::vector<std::vector<u64>> col(slots.size());
    std::vector<char> zero_slot(slots.size(), 0);
    std::size_t count = 0;
    bool deep = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        bool rz = false;
        col[i] = slot_witnesses(slots[i], locals[i], k, rz);
        zero_slot[i] = rz ? 1 : 0;
        count = std::max(count, col[i].size());
        deep = deep || slots[i].e > 1;
    }

    if (!deep) {
        // Semisimple: coordinates are independent, zero padding is exact.
        for (auto& c : col) c.resize(count, 0);
        std::vector<u64> vals(slots.size());
        for (std::size_t j = 0; j < count; ++j) {
            for (std::size_t i = 0; i < slots.size(); ++i) vals[i] = col[i][j];
            std::size_t cur = 0;
            out.witnesses.push_back(join_indices(R, vals, cur));
        }
        if (!verify_ring_decomposition(R, out))
            fail("LiftMismatch", "semisimple decomposition failed verification");
        return out;
    }

    // Nontrivial radical: the first witness must be a unit mod J before the
    // Newton correction.  Zero coordinates swap in 1 and cancel it with -1
    // for odd k, or with a residue-field representation of -1 otherwise.
    bool odd = (k % 2) == 1;
    std::vector<std::vector<u64>> cancel(slots.size());
    std::size_t need = count;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!zero_slot[i]) continue;
        if (odd) {
            need = std::max<std::size_t>(need, 2);
        } else {
            cancel[i] = slot_neg_one_witnesses(slots[i], k);
            need = std::max(need, cancel[i].size() + 1);
        }
    }
    count = need;
    for (auto& c : col) c.resize(count, 0);

    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (zero_slot[i]) {
            col[i][0] = slot_one(slots[i]);
            if (odd) {
                col[i][1] = slot_neg_one(slots[i]);
            } else {
                for (std::size_t j = 0; j < cancel[i].size(); ++j) col[i][1 + j] = cancel[i][j];
            }
        } else {
            std::size_t nz = 0;
            while (col[i][nz] == 0) ++nz;
            std::swap(col[i][0], col[i][nz]);
        }
    }

    std::vector<u64> wit(count);
    std::vector<u64> vals(slots.size());
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t i = 0; i < slots.size(); ++i) vals[i] = col[i][j];
        std::size_t cur = 0;
        wit[j] = join_indices(R, vals, cur);
    }

    u64 fixed = r_zero(R);
    for (std::size_t j = 1; j < count; ++j) fixed = r_add(R, fixed, r_pow(R, wit[j], k));
    std::vector<u64> coeffs(k + 1, r_zero(R));
    coeffs[k] = r_one(R);
    coeffs[0] = r_sub(R, fixed, alpha);
    wit[0] = radical_hensel(R, coeffs, wit[0]);

    out.witnesses = std::move(wit);
    if (!verify_ring_decomposition(R, out))
        fail("LiftMismatch", "lifted decomposition failed verification");
    return out;
}

bool verify_ring_decomposition(const RingSpec& R, const RingDecomposition& d, std::string* diff) {
    if (d.k == 0) {
        if (diff) *diff = "k must be positive";
        return false;
    }
    u64 order = r_order(R);
    u64 sum = r_zero(R);
    for (u64 w : d.witnesses) {
        if (w >= order) {
            if (diff) *diff = "witness index out of range";
            return false;
        }
        sum = r_add(R, sum, r_pow(R, w, d.k));
    }
    if (sum != d.target) {
        if (diff)
            *diff = "power sum is " + std::to_string(sum) + ", target is " +
                    std::to_string(d.target);
        return false;
    }
    return true;
}

namespace {

SubringResult finish_subring(std::vector<u64> codes, u64 one_code, u64 alpha_code,
                             const std::function<u64(u64, u64)>& addc,
                             const std::function<u64(u64, u64)>& mulc) {
    std::sort(codes.begin(), codes.end());
    if (codes.size() > kTableCap)
        fail("CapExceeded", "subring of order " + std::to_string(codes.size()) +
                                " exceeds the " + std::to_string(kTableCap) + " table cap");
    std::unordered_map<u64, u32> idx;
    idx.reserve(codes.size() * 2);
    for (std::size_t i = 0; i < codes.size(); ++i) idx.emplace(codes[i], u32(i));

    u32 n = u32(codes.size());
    std::vector<u16> add(std::size_t(n) * n), mul(std::size_t(n) * n);
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) {
            auto ai = idx.find(addc(codes[i], codes[j]));
            if (ai == idx.end()) fail("ClosureViolation", "closure is not additively closed");
            add[std::size_t(i) * n + j] = u16(ai->second);
            auto mi = idx.find(mulc(codes[i], codes[j]));
            if (mi == idx.end()) fail("ClosureViolation", "closure is not multiplicatively closed");
            mul[std::size_t(i) * n + j] = u16(mi->second);
        }

    SubringResult out;
    out.ring = make_table_ring(n, std::move(add), std::move(mul), u16(idx.at(one_code)));
    out.alpha_index = idx.at(alpha_code);
    out.member_codes = std::move(codes);
    return out;
}

// Distinct powers alpha^0, alpha^1, ... up to the first repeat, then the
// additive subgroup they generate.
std::vector<u64> power_closure(u64 one_code, u64 zero_code,
                               const std::function<u64(u64)>& mul_by_alpha,
                               const std::function<u64(u64, u64)>& addc, u64 cap) {
    std::unordered_map<u64, char> seen;
    std::vector<u64> powers;
    u64 cur = one_code;
    while (seen.emplace(cur, 1).second) {
        powers.push_back(cur);
        if (powers.size() > cap) fail("CapExceeded", "power chain exceeds the closure cap");
        cur = mul_by_alpha(cur);
    }

    std::unordered_map<u64, char> in;
    std::vector<u64> work;
    auto touch = [&](u64 x) {
        if (in.emplace(x, 1).second) {
            work.push_back(x);
            if (in.size() > cap) fail("CapExceeded", "additive closure exceeds the closure cap");
        }
    };
    touch(zero_code);
    for (u64 p : powers) touch(p);
    for (std::size_t i = 0; i < work.size(); ++i)
        for (u64 p : powers) touch(addc(work[i], p));
    std::vector<u64> out;
    out.reserve(in.size());
    for (auto& kv : in) out.push_back(kv.first);
    return out;
}

u64 mring_code(const FieldCtx& F, const FqMatrix& A) {
    u64 c = 0;
    for (std::size_t i = A.a.size(); i-- > 0;) c = c * F.q + A.a[i];
    return c;
}

FqMatrix mring_decode(const FieldCtx& F, u32 n, u64 code) {
    FqMatrix M = m_zero(n);
    for (std::size_t i = 0; i < M.a.size(); ++i) {
        M.a[i] = u32(code % F.q);
        code /= F.q;
    }
    return M;
}

}  // namespace

SubringResult zalpha_subring(const FieldCtx& F, const FqMatrix& alpha, u64 cap) {
    u32 n = alpha.n;
    if (n == 0) fail("OutOfRange", "matrix must be nonempty");
    auto addc = [&](u64 a, u64 b) {
        return mring_code(F, m_add(F, mring_decode(F, n, a), mring_decode(F, n, b)));
    };
    auto mulc = [&](u64 a, u64 b) {
        return mring_code(F, m_mul(F, mring_decode(F, n, a), mring_decode(F, n, b)));
    };
    u64 acode = mring_code(F, alpha);
    u64 icode = mring_code(F, m_identity(n));
    auto step = [&](u64 c) { return mulc(c, acode); };
    std::vector<u64> codes = power_closure(icode, 0, step, addc, cap);
    return finish_subring(std::move(codes), icode, acode, addc, mulc);
}

SubringResult zalpha_subring(const RingSpec& R, u64 alpha, u64 cap) {
    if (alpha >= r_order(R)) fail("OutOfRange", "element index out of range");
    auto addc = [&](u64 a, u64 b) { return r_add(R, a, b); };
    auto mulc = [&](u64 a, u64 b) { return r_mul(R, a, b); };
    auto step = [&](u64 c) { return r_mul(R, c, alpha); };
    std::vector<u64> codes = power_closure(r_one(R), r_zero(R), step, addc, cap);
    return finish_subring(std::move(codes), r_one(R), alpha, addc, mulc);
}

RingSpec table_ring_from_matrices(const FieldCtx& F, u32 n) {
    if (n == 0) fail("OutOfRange", "matrix dimension must be positive");
    u64 order = 1;
    for (u32 i = 0; i < n * n; ++i) {
        if (order > kTableCap / F.q)
            fail("CapExceeded", "matrix ring order exceeds the " + std::to_string(kTableCap) +
                                    " table cap");
        order *= F.q;
    }
    std::vector<FqMatrix> mats;
    mats.reserve(order);
    for (u64 c = 0; c < order; ++c) mats.push_back(mring_decode(F, n, c));
    std::vector<u16> add(order * order), mul(order * order);
    for (u64 i = 0; i < order; ++i)
        for (u64 j = 0; j < order; ++j) {
            add[i * order + j] = u16(mring_code(F, m_add(F, mats[i], mats[j])));
            mul[i * order + j] = u16(mring_code(F, m_mul(F, mats[i], mats[j])));
        }
    return make_table_ring(u32(order), std::move(add), std::move(mul),
                           u16(mring_code(F, m_identity(n))));
}

UnitPowerVerdict unit_power_criterion(const std::vector<PrimePower>& factorization, u64 k,
                                      UnitPowerMode mode) {
    if (k == 0) fail("OutOfRange", "k must be positive");
    for (std::size_t i = 0; i < factorization.size(); ++i) {
        const PrimePower& pp = factorization[i];
        if (!is_prime(pp.p))
            fail("InvalidFactorization", std::to_string(pp.p) + " is not prime");
        if (pp.e == 0) fail("InvalidFactorization", "exponents must be positive");
        for (std::size_t j = i + 1; j < factorization.size(); ++j)
            if (factorization[j].p == pp.p)
                fail("InvalidFactorization", "repeated prime " + std::to_string(pp.p));
        if (mode == UnitPowerMode::Cubefree && pp.e > 2)
            fail("ModeViolation", "cubefree mode requires exponents at most 2, got " +
                                      std::to_string(pp.p) + "^" + std::to_string(pp.e));
    }

    UnitPowerVerdict v;
    for (const PrimePower& pp : factorization) {
        if (k % pp.p == 0) {
            v.witness_prime = pp.p;
            v.witness_gcd = pp.p;
            v.detail = std::to_string(pp.p) + " divides k";
            return v;
        }
        u32 lo = mode == UnitPowerMode::Cubefree ? pp.e : 1;
        for (u32 i = lo; i <= pp.e; ++i) {
            u64 a = (mod_pow(pp.p, i, k) + k - 1) % k;
            u64 g = std::gcd(k, a);
            if (g > 1) {
                v.witness_prime = pp.p;
                v.witness_gcd = g;
                v.detail = "gcd(k, " + std::to_string(pp.p) + "^" + std::to_string(i) +
                           " - 1) = " + std::to_string(g);
                return v;
            }
        }
    }
    v.passes = true;
    v.elements_need = (k % 2) ? 1 : 2;
    return v;
}

namespace {

u64 parse_number(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail("ParseError", std::string("expected a number for ") + what + ", got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        fail("ParseError", std::string("number out of range for ") + what);
    }
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

RingSpec parse_ring_spec(const std::string& text) {
    if (text.starts_with("zn:")) return make_zn(parse_number(text.substr(3), "zn modulus"));
    if (text.starts_with("polyq:")) {
        u64 p = 0, s = 1, e = 1;
        std::string fstr;
        for (const std::string& kv : split_on(text.substr(6), ',')) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                fail("ParseError", "expected key=value in polyq spec, got '" + kv + "'");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "p")
                p = parse_number(val, "p");
            else if (key == "s")
                s = parse_number(val, "s");
            else if (key == "e")
                e = parse_number(val, "e");
            else if (key == "f")
                fstr = val;
            else
                fail("ParseError", "unknown polyq key '" + key + "'");
        }
        if (p == 0 || fstr.empty()) fail("ParseError", "polyq spec needs p and f");
        if (s == 0 || s > 16) fail("ParseError", "polyq extension degree out of range");
        if (e == 0 || e > 64) fail("ParseError", "polyq exponent out of range");
        auto field = std::make_shared<FieldCtx>(build_field(p, u32(s)));
        Poly f = p_parse(*field, fstr);
        return make_polyq(std::move(field), std::move(f), u32(e));
    }
    if (text.starts_with("prod:")) {
        std::vector<RingSpec> parts;
        for (const std::string& part : split_on(text.substr(5), '|')) {
            if (part.starts_with("prod:")) fail("ParseError", "nested products are not supported");
            parts.push_back(parse_ring_spec(part));
        }
        return make_product(std::move(parts));
    }
    fail("ParseError", "unknown ring spec '" + text + "'");
}

std::string format_ring_spec(const RingSpec& R) {
    if (auto* z = std::get_if<Zn>(&R.v)) return "zn:" + std::to_string(z->n);
    if (auto* pq = std::get_if<PolyQuotient>(&R.v))
        return "polyq:p=" + std::to_string(pq->field->p) + ",s=" + std::to_string(pq->field->s) +
               ",f=" + p_format(pq->f) + ",e=" + std::to_string(pq->e);
    if (auto* pr = std::get_if<Product>(&R.v)) {
        std::string out = "prod:";
        for (std::size_t i = 0; i < pr->parts.size(); ++i) {
            if (i) out += '|';
            out += format_ring_spec(pr->parts[i]);
        }
        return out;
    }
    return "tablering:order=" + std::to_string(std::get<TableRing>(R.v).order);
}

u64 parse_ring_element(const RingSpec& R, const std::string& text) {
    if (auto* z = std::get_if<Zn>(&R.v)) {
        bool negate = text.starts_with("-");
        u64 value = parse_number(negate ? text.substr(1) : text, "ring element") % z->n;
        return negate && value ? z->n - value : value;
    }
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        std::vector<std::string> digits = split_on(text, ',');
        if (digits.size() > pq_width(*pq))
            fail("ParseError", "too many coefficients for this quotient");
        Poly a;
        for (const std::string& d : digits) a.push_back(parse_element(*pq->field, d));
        p_trim(a);
        return pq_code(*pq, a);
    }
    if (auto* pr = std::get_if<Product>(&R.v)) {
        std::vector<std::string> parts = split_on(text, '|');
        if (parts.size() != pr->parts.size())
            fail("ParseError", "expected " + std::to_string(pr->parts.size()) +
                                   " components, got " + std::to_string(parts.size()));
        u64 out = 0, base = 1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            out += parse_ring_element(pr->parts[i], parts[i]) * base;
            base *= r_order(pr->parts[i]);
        }
        return out;
    }
    const TableRing& t = std::get<TableRing>(R.v);
    u64 value = parse_number(text, "ring element");
    if (value >= t.order) fail("ParseError", "element index out of range");
    return value;
}

std::string format_ring_element(const RingSpec& R, u64 a) {
    if (std::get_if<Zn>(&R.v) || std::get_if<TableRing>(&R.v)) return std::to_string(a);
    if (auto* pq = std::get_if<PolyQuotient>(&R.v)) {
        u64 q = pq->field->q;
        std::string out;
        for (u64 i = 0, w = pq_width(*pq); i < w; ++i) {
            if (i) out += ',';
            out += format_element(u32(a % q));
            a /= q;
        }
        return out;
    }
    const Product& pr = std::get<Product>(R.v);
    std::string out;
    for (std::size_t i = 0; i < pr.parts.size(); ++i) {
        u64 o = r_order(pr.parts[i]);
        if (i) out += '|';
        out += format_ring_element(pr.parts[i], a % o);
        a /= o;
    }
    return out;
}

}  // namespace waring
