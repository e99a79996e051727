#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waring/field.hpp"
#include "waring/poly.hpp"

namespace waring {

// Square matrix over a FieldCtx, row-major entry codes.
struct FqMatrix {
    u32 n = 0;
    std::vector<u32> a;

    u32& at(u32 i, u32 j) { return a[std::size_t(i) * n + j]; }
    u32 at(u32 i, u32 j) const { return a[std::size_t(i) * n + j]; }
    bool operator==(const FqMatrix&) const = default;
};

FqMatrix m_zero(u32 n);
FqMatrix m_identity(u32 n);
FqMatrix m_scalar(u32 n, u32 c);

FqMatrix m_add(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix m_sub(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix m_neg(const FieldCtx& F, const FqMatrix& A);
FqMatrix m_mul(const FieldCtx& F, const FqMatrix& A, const FqMatrix& B);
FqMatrix m_pow(const FieldCtx& F, FqMatrix A, u64 e);

// p(A) by Horner evaluation.
FqMatrix m_eval_poly(const FieldCtx& F, const Poly& p, const FqMatrix& A);

bool m_is_zero(const FqMatrix& A);

// Monic generator of the annihilator ideal of A: least common multiple of
// the per-column Krylov relations.
Poly minimal_polynomial(const FieldCtx& F, const FqMatrix& A);

struct MatrixDecomposition {
    FqMatrix target;
    u64 k = 0;
    std::vector<FqMatrix> witnesses;
    // One certifying polynomial per witness (B_i = P_i(A)); empty when the
    // witnesses were found by whole-ring search and lie outside the subring
    // generated by the target.
    std::vector<Poly> witness_polys;
};

// Writes A as a sum of k-th powers. The main route works inside the subring
// generated by A: split the quotient by the minimal polynomial into coprime
// factor quotients, decompose in each residue field, lift to the full factor
// precision, and recombine. When a residue field admits no such decomposition
// a whole-ring search takes over at small sizes.
MatrixDecomposition decompose_matrix(const FieldCtx& F, const FqMatrix& A, u64 k);

// Exact recheck of a decomposition; on failure appends the reason to *diff.
bool verify_matrix_decomposition(const FieldCtx& F, const MatrixDecomposition& d,
                                 std::string* diff = nullptr);

// Rows separated by ';', entries by ','; entries as codes or g-polynomials.
FqMatrix parse_matrix(const FieldCtx& F, const std::string& text);

std::string format_matrix(const FqMatrix& A);

}  // namespace waring
