/// @file linear_operator.hpp
/// @brief Matrix-free apply contract (Schur complements, reduced OCP operators).

#ifndef SPLITKRYLOV_CORE_LINEAR_OPERATOR_HPP
#define SPLITKRYLOV_CORE_LINEAR_OPERATOR_HPP

#include <functional>
#include <memory>
#include <utility>

#include "sparse_matrix.hpp"
#include "types.hpp"

namespace splitkrylov {

struct LinearOperator {
    index_t dim_in = 0;
    index_t dim_out = 0;
    std::function<Vector(const Vector&)> apply_fn;
    std::function<Vector(const Vector&)> apply_adjoint_fn; // optional

    Vector apply(const Vector& x) const {
        if (static_cast<index_t>(x.size()) != dim_in)
            throw DimensionError("LinearOperator::apply: dimension mismatch");
        return apply_fn(x);
    }

    bool has_adjoint() const { return static_cast<bool>(apply_adjoint_fn); }

    Vector apply_adjoint(const Vector& y) const {
        if (!has_adjoint()) throw StructureError("LinearOperator: no adjoint available");
        if (static_cast<index_t>(y.size()) != dim_out)
            throw DimensionError("LinearOperator::apply_adjoint: dimension mismatch");
        return apply_adjoint_fn(y);
    }
};

inline LinearOperator make_operator(index_t dim_in, index_t dim_out,
                                    std::function<Vector(const Vector&)> apply,
                                    std::function<Vector(const Vector&)> adjoint = {}) {
    LinearOperator op;
    op.dim_in = dim_in;
    op.dim_out = dim_out;
    op.apply_fn = std::move(apply);
    op.apply_adjoint_fn = std::move(adjoint);
    return op;
}

/// Wraps a matrix by value; the copy keeps the operator self-contained.
inline LinearOperator operator_from_matrix(SparseMatrix a) {
    auto shared = std::make_shared<SparseMatrix>(std::move(a));
    return make_operator(
        shared->n_cols, shared->n_rows,
        [shared](const Vector& x) { return spmv(*shared, x); },
        [shared](const Vector& y) { return spmv_transpose(*shared, y); });
}

/// Wraps a matrix the caller keeps alive for the operator's lifetime.
inline LinearOperator operator_from_matrix_ref(const SparseMatrix& a) {
    const SparseMatrix* p = &a;
    return make_operator(
        a.n_cols, a.n_rows, [p](const Vector& x) { return spmv(*p, x); },
        [p](const Vector& y) { return spmv_transpose(*p, y); });
}

} // namespace splitkrylov

#endif
