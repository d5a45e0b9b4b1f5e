/// @file schur.hpp
/// @brief Matrix-free Schur complement W = -a21 a11^{-1} a12.

#ifndef SPLITKRYLOV_DISCRETIZE_SCHUR_HPP
#define SPLITKRYLOV_DISCRETIZE_SCHUR_HPP

#include <memory>

#include "../core/linear_operator.hpp"
#include "../krylov/operator_solver.hpp"
#include "problem_spec.hpp"

namespace splitkrylov {

/// Each application performs one configured a11 solve; non-convergence of the
/// inner solver propagates as a SolveError with iteration diagnostics. The
/// optional out-parameter shares the inner solver for iteration accounting.
inline LinearOperator schur_operator(const BlockSystem& blocks, const SolverConfig& inner,
                                     std::shared_ptr<OperatorSolver>* inner_out = nullptr) {
    auto solver = std::make_shared<OperatorSolver>(blocks.a11, inner);
    if (inner_out) *inner_out = solver;
    auto a12 = std::make_shared<SparseMatrix>(blocks.a12);
    auto a21 = std::make_shared<SparseMatrix>(blocks.a21);
    const index_t n = blocks.a12.n_cols;
    return make_operator(
        n, n,
        [solver, a12, a21](const Vector& v) {
            Vector u = solver->solve(spmv(*a12, v));
            Vector w = spmv(*a21, u);
            scale(w, -1.0);
            return w;
        },
        [solver, a12, a21](const Vector& v) {
            Vector u = solver->solve_adjoint(spmv_transpose(*a21, v));
            Vector w = spmv_transpose(*a12, u);
            scale(w, -1.0);
            return w;
        });
}

} // namespace splitkrylov

#endif
