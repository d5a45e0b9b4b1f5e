/// @file constraint_precond.hpp
/// @brief Constraint preconditioner and projected preconditioned CG (PPCG).

#ifndef SPLITKRYLOV_OPTCTL_CONSTRAINT_PRECOND_HPP
#define SPLITKRYLOV_OPTCTL_CONSTRAINT_PRECOND_HPP

#include <chrono>
#include <cmath>
#include <utility>

#include "../core/vector_ops.hpp"
#include "../krylov/operator_solver.hpp"
#include "kkt.hpp"
#include "ocp_problem.hpp"

namespace splitkrylov {

/// Applies the inverse of P = [[0,0,A^T],[0,lambda I,-B^T],[A,-B,0]] in the
/// block-row-wise fashion: one A^T solve, one A solve.
///   p = A^{-T} r1;  u = (1/lambda)(B^T p + r2);  x = A^{-1}(B u + r3)
inline Vector constraint_precond_apply(const OcpProblem& ocp, OperatorSolver& solver,
                                       const Vector& r) {
    const auto blocks = split3(r, ocp.n(), ocp.m(), ocp.n());
    Vector p = solver.solve_adjoint(blocks.x);
    Vector u = spmv_transpose(ocp.b_in, p);
    axpy(1.0, blocks.u, u);
    scale(u, 1.0 / ocp.lambda_reg);
    Vector bu = spmv(ocp.b_in, u);
    axpy(1.0, blocks.p, bu);
    Vector x = solver.solve(bu);
    return concat3(x, u, p);
}

/// PCG on the full optimality system with the constraint preconditioner,
/// started from the admissible triple (A^{-1} f, 0, 0) so the constraint
/// block of the residual vanishes and iterates stay on the feasible
/// manifold. Stopping is on the relative Euclidean KKT residual.
inline KktSolution ppcg_solve(const OcpProblem& ocp, const OcpSolveOptions& opt) {
    ocp.validate();
    const auto t0 = std::chrono::steady_clock::now();
    OperatorSolver solver(ocp.a_split, detail::effective_inner(opt, 1e-6));
    const KktSystem sys = assemble_kkt(ocp);
    const index_t n = ocp.n(), m = ocp.m();

    KktSolution sol;
    SolveReport& report = sol.outer_report;

    Vector z = concat3(solver.solve(ocp.f), zeros(m), zeros(n));
    Vector r = subtract(sys.rhs, spmv(sys.matrix, z));
    const real_t rhs_norm = norm2(sys.rhs);
    const real_t fnorm = norm2(ocp.f);
    const real_t feasibility_cap = 1e-6 * std::max<real_t>(1.0, fnorm);
    report.residual_history.push_back(rhs_norm == 0.0 ? 0.0 : norm2(r) / rhs_norm);

    auto constraint_block_norm = [&](const Vector& residual) {
        real_t s = 0.0;
        for (index_t i = n + m; i < static_cast<index_t>(residual.size()); ++i)
            s += residual[static_cast<std::size_t>(i)] * residual[static_cast<std::size_t>(i)];
        return std::sqrt(s);
    };
    sol.max_constraint_residual = constraint_block_norm(r);

    if (report.residual_history.back() > opt.cgtol) {
        Vector zp = constraint_precond_apply(ocp, solver, r);
        Vector d = zp;
        real_t rz = dot(r, zp);
        for (int it = 1; it <= opt.outer_max_iter; ++it) {
            Vector q = spmv(sys.matrix, d);
            const real_t curvature = dot(d, q);
            if (curvature <= 0.0) {
                report.termination = "indefinite";
                break;
            }
            const real_t alpha = rz / curvature;
            axpy(alpha, d, z);
            axpy(-alpha, q, r);
            report.iterations = it;
            const real_t relres = norm2(r) / rhs_norm;
            report.residual_history.push_back(relres);
            const real_t feas = constraint_block_norm(r);
            sol.max_constraint_residual = std::max(sol.max_constraint_residual, feas);
            if (feas > feasibility_cap) sol.feasibility_degraded = true;
            if (relres <= opt.cgtol) {
                report.converged = true;
                break;
            }
            zp = constraint_precond_apply(ocp, solver, r);
            const real_t rz_next = dot(r, zp);
            if (!(rz > 0.0)) {
                report.termination = "breakdown";
                break;
            }
            const real_t beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = zp[i] + beta * d[i];
        }
    } else {
        report.converged = true;
    }

    if (report.termination.empty())
        report.termination = report.converged ? "converged" : "max_iter";
    const auto blocks = split3(z, n, m, n);
    sol.x = blocks.x;
    sol.u = blocks.u;
    sol.p = blocks.p;
    sol.kkt_residual = kkt_residual(ocp, sol.x, sol.u, sol.p);
    sol.inner_iterations = solver.inner_iterations();
    sol.symmetry_degraded = solver.symmetry_degraded();
    report.inner_iterations = sol.inner_iterations;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

} // namespace splitkrylov

#endif
