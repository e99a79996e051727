#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "waring/field.hpp"
#include "waring/matrix.hpp"
#include "waring/numbers.hpp"
#include "waring/poly.hpp"

namespace waring {

// Finite rings with computable Jacobson radicals, plus table-backed rings for
// everything else.  Elements are indices in [0, order): Zn stores the residue
// itself, PolyQuotient packs the coefficient vector base q (constant digit
// least significant), Product uses mixed radix with the first part least
// significant, TableRing indexes its operation tables directly.
struct RingSpec {
    // No default member initializers here: they would be parsed only once the
    // enclosing class is complete, which deletes the recursive variant's
    // default constructor.  The make_* constructors fill every field.
    struct Zn {
        u64 n;
    };
    struct PolyQuotient {
        std::shared_ptr<FieldCtx> field;  // coefficient field
        Poly f;                           // monic irreducible over field
        u32 e;                            // ring is field[x]/(f^e)
    };
    struct Product {
        std::vector<RingSpec> parts;
    };
    struct TableRing {
        u32 order;
        std::vector<u16> add, mul;  // order x order, row major
        std::vector<u16> neg;       // additive inverse per element
        u16 zero, one;
    };
    std::variant<Zn, PolyQuotient, Product, TableRing> v;
};

// Validating constructors.  make_table_ring locates the additive identity and
// inverse table itself; order is capped at 4096 so tables stay materializable.
RingSpec make_zn(u64 n);
RingSpec make_polyq(std::shared_ptr<FieldCtx> field, Poly f, u32 e);
RingSpec make_product(std::vector<RingSpec> parts);
RingSpec make_table_ring(u32 order, std::vector<u16> add, std::vector<u16> mul, u16 one);

u64 r_order(const RingSpec& R);
u64 r_zero(const RingSpec& R);
u64 r_one(const RingSpec& R);
u64 r_add(const RingSpec& R, u64 a, u64 b);
u64 r_neg(const RingSpec& R, u64 a);
u64 r_sub(const RingSpec& R, u64 a, u64 b);
u64 r_mul(const RingSpec& R, u64 a, u64 b);
u64 r_pow(const RingSpec& R, u64 a, u64 e);
bool r_is_unit(const RingSpec& R, u64 a);
u64 r_inv(const RingSpec& R, u64 a);  // NotAUnit when no inverse exists
bool r_commutative(const RingSpec& R);
bool r_in_radical(const RingSpec& R, u64 a);

// Radical by closed form for the structured classes; for table rings by the
// brute criterion "x is radical iff 1 + r*x*s is a unit for all r, s", which
// is capped at order 256.  nilpotency is the least l with J^l = 0.
struct RadicalDescription {
    std::vector<u64> generators;  // table rings list every member instead
    u64 nilpotency = 1;
    u64 size = 1;  // |J|
};
RadicalDescription jacobson_radical(const RingSpec& R);

// Exact root from an approximate one: needs p(a0) in J and p'(a0) a unit.
// Newton steps stay congruent to a0 mod J and reach an exact root within the
// nilpotency degree of J.  coeffs holds ring elements, constant first.
u64 radical_hensel(const RingSpec& R, const std::vector<u64>& coeffs, u64 a0);

struct RingDecomposition {
    u64 target = 0;
    u64 k = 0;
    std::vector<u64> witnesses;
};

// Witnesses b_1..b_m with sum b_i^k = alpha.  Requires gcd(order, k) = 1 and a
// commutative ring.  Structured rings go through their residue fields and one
// Newton correction; the count is the per-slot minimum for units mod J and
// gains at most one extra witness otherwise.  Table-backed rings are searched
// exhaustively, so their counts are always minimal.
RingDecomposition decompose_ring_element(const RingSpec& R, u64 alpha, u64 k);
bool verify_ring_decomposition(const RingSpec& R, const RingDecomposition& d,
                               std::string* diff = nullptr);

// Exact least n such that every element is a sum of n k-th powers, by sumset
// closure over the additive group.  Cap: order <= 4096.
struct BruteWaring {
    bool coverable = false;
    u32 n = 0;  // meaningful when coverable
};
BruteWaring brute_force_waring(const RingSpec& R, u64 k);

// Unital subring generated by one element: additive closure of its powers,
// returned as a TableRing together with the generator's index and the parent
// codes of every member.  Matrices are coded base q over row-major entries.
struct SubringResult {
    RingSpec ring;
    u64 alpha_index = 0;
    std::vector<u64> member_codes;  // parent code per subring index
};
SubringResult zalpha_subring(const FieldCtx& F, const FqMatrix& alpha, u64 cap = 65536);
SubringResult zalpha_subring(const RingSpec& R, u64 alpha, u64 cap = 65536);

// Full matrix ring Mat_n(F) as a TableRing; order q^(n^2) must stay within
// the table cap.  The result is noncommutative for n > 1, which the brute
// oracle accepts and decompose_ring_element rejects.
RingSpec table_ring_from_matrices(const FieldCtx& F, u32 n);

// gcd criteria deciding "every unit is a k-th power" from the factorization
// of the multiplicative group order.  Cubefree mode checks gcd(k, p^e - 1)
// per prime and insists every exponent is at most 2; general mode checks
// gcd(k, prod_{i=1..e} (p^i - 1)).  A pass makes every element a single k-th
// power for odd k and a sum of two for even k.
enum class UnitPowerMode { Cubefree, General };
struct UnitPowerVerdict {
    bool passes = false;
    u32 elements_need = 0;  // 1 for odd k, 2 for even k; meaningful on a pass
    u64 witness_prime = 0;  // offending prime on failure
    u64 witness_gcd = 0;    // offending gcd > 1 on failure
    std::string detail;
};
UnitPowerVerdict unit_power_criterion(const std::vector<PrimePower>& factorization, u64 k,
                                      UnitPowerMode mode);

// Textual forms: "zn:55", "polyq:p=3,s=1,f=x^2+1,e=2", "prod:zn:5|zn:11"
// (flat products only).  Elements print as the residue for Zn, a comma list
// of coefficient codes for PolyQuotient, and '|'-joined parts for Product.
RingSpec parse_ring_spec(const std::string& text);
std::string format_ring_spec(const RingSpec& R);
u64 parse_ring_element(const RingSpec& R, const std::string& text);
std::string format_ring_element(const RingSpec& R, u64 a);

}  // namespace waring
