/// @file split_operator.hpp
/// @brief Symmetric/skew-symmetric splitting A = H + S.

#ifndef SPLITKRYLOV_CORE_SPLIT_OPERATOR_HPP
#define SPLITKRYLOV_CORE_SPLIT_OPERATOR_HPP

#include <cmath>

#include "sparse_matrix.hpp"
#include "types.hpp"

namespace splitkrylov {

/// Carrier for the triple (A, H, S) with A = H + S, H = H^T, S = -S^T.
/// H and S are stored explicitly (H is reused by preconditioner
/// factorizations) and share the symmetrized pattern of A.
struct SplitOperator {
    SparseMatrix a;
    SparseMatrix h;
    SparseMatrix s;

    index_t dim() const { return a.n_rows; }
};

/// Splits a square matrix into h = (a + a^T)/2 and s = (a - a^T)/2.
inline SplitOperator split(const SparseMatrix& a) {
    if (!a.is_square()) throw DimensionError("split: matrix must be square");
    const SparseMatrix at = transpose(a);
    SplitOperator op;
    op.a = a;
    op.h = add(a, at, 0.5, 0.5);
    op.s = add(a, at, 0.5, -0.5);
    return op;
}

/// Builds a SplitOperator from already-separated parts, a = h + s on the
/// union pattern. Used by the discretizers where exact symmetry is assembled
/// rather than recovered numerically.
inline SplitOperator make_split(SparseMatrix h, SparseMatrix s) {
    SplitOperator op;
    op.a = add(h, s);
    op.h = std::move(h);
    op.s = std::move(s);
    return op;
}

/// Max |h - h^T| and |s + s^T| entry, relative to the Frobenius norm of a.
inline real_t split_defect(const SplitOperator& op) {
    const SparseMatrix dh = add(op.h, transpose(op.h), 1.0, -1.0);
    const SparseMatrix ds = add(op.s, transpose(op.s), 1.0, 1.0);
    const SparseMatrix da = add(add(op.h, op.s), op.a, 1.0, -1.0);
    const real_t scale_ref = std::max(op.a.frobenius_norm(), real_t(1));
    real_t worst = 0.0;
    for (real_t v : dh.values) worst = std::max(worst, std::abs(v));
    for (real_t v : ds.values) worst = std::max(worst, std::abs(v));
    for (real_t v : da.values) worst = std::max(worst, std::abs(v));
    return worst / scale_ref;
}

} // namespace splitkrylov

#endif
