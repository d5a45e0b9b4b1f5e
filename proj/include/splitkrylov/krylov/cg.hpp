/// @file cg.hpp
/// @brief Preconditioned conjugate gradients for SPD operators.

#ifndef SPLITKRYLOV_KRYLOV_CG_HPP
#define SPLITKRYLOV_KRYLOV_CG_HPP

#include <chrono>
#include <utility>

#include "../core/linear_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "solver_config.hpp"

namespace splitkrylov {

/// Standard PCG. The operator must be symmetric positive definite; a
/// direction of non-positive curvature is reported as a structure error
/// (diagnostic for misuse).
inline std::pair<Vector, SolveReport> cg_solve(const LinearOperator& op, const Vector& b,
                                               const SolverConfig& cfg,
                                               const Preconditioner& precond = {}) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    Vector x = zeros(op.dim_in);
    Vector r = b;
    const real_t bnorm = norm2(b);
    report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (cfg.record_iterates) report.iterates.push_back(x);
    if (bnorm == 0.0 || report.residual_history.back() <= cfg.tol) {
        report.converged = true;
        report.termination = "converged";
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {std::move(x), std::move(report)};
    }

    Vector z = precond.apply(r);
    Vector p = z;
    real_t rz = dot(r, z);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        Vector ap = op.apply(p);
        const real_t curvature = dot(p, ap);
        if (curvature <= 0.0)
            throw StructureError("cg_solve: non-positive curvature (operator not SPD)");
        const real_t alpha = rz / curvature;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        const real_t relres = norm2(r) / bnorm;
        report.residual_history.push_back(relres);
        report.iterations = it;
        if (cfg.record_iterates) report.iterates.push_back(x);
        if (relres <= cfg.tol) {
            report.converged = true;
            break;
        }
        z = precond.apply(r);
        const real_t rz_next = dot(r, z);
        const real_t beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    report.termination = report.converged ? "converged" : "max_iter";
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), std::move(report)};
}

} // namespace splitkrylov

#endif
