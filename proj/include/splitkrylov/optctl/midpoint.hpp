/// @file midpoint.hpp
/// @brief Implicit-midpoint step for dissipative evolutions x' = -M x.

#ifndef SPLITKRYLOV_OPTCTL_MIDPOINT_HPP
#define SPLITKRYLOV_OPTCTL_MIDPOINT_HPP

#include "../core/split_operator.hpp"
#include "../core/vector_ops.hpp"
#include "../krylov/operator_solver.hpp"

namespace splitkrylov {

/// Solves (I + dt/2 M) x+ = (I - dt/2 M) x with the per-step splitting
/// H_step = I + dt/2 H_M, S_step = dt/2 S_M. With H_M positive semidefinite
/// the step never increases the norm (the Cayley map is a contraction,
/// an isometry for purely skew M).
inline Vector midpoint_step(const SplitOperator& m_split, real_t dt, const Vector& x,
                            const SolverConfig& cfg) {
    if (!(dt > 0)) throw ConfigError("midpoint_step: dt must be positive");
    SplitOperator step = make_split(
        add(SparseMatrix::identity(m_split.dim()), m_split.h, 1.0, 0.5 * dt),
        scale(m_split.s, 0.5 * dt));
    Vector rhs = x;
    axpy(-0.5 * dt, spmv(m_split.a, x), rhs);
    OperatorSolver solver(std::move(step), cfg);
    return solver.solve(rhs);
}

} // namespace splitkrylov

#endif
