/// @file condensed.hpp
/// @brief Reduced-to-control pipeline: outer CG on (CA^{-1}B)^T(CA^{-1}B) + lambda I.

#ifndef SPLITKRYLOV_OPTCTL_CONDENSED_HPP
#define SPLITKRYLOV_OPTCTL_CONDENSED_HPP

#include <utility>

#include "../core/linear_operator.hpp"
#include "../core/vector_ops.hpp"
#include "../krylov/cg.hpp"
#include "../krylov/operator_solver.hpp"
#include "kkt.hpp"
#include "ocp_problem.hpp"

namespace splitkrylov {

/// One application of the reduced operator: B^T A^{-T} C^T C A^{-1} B u + lambda u.
/// Each call performs one state and one adjoint solve.
inline Vector reduced_apply(const OcpProblem& ocp, OperatorSolver& solver, const Vector& u) {
    Vector v = solver.solve(spmv(ocp.b_in, u));
    Vector w = solver.solve_adjoint(spmv_transpose(ocp.c_out, spmv(ocp.c_out, v)));
    Vector out = spmv_transpose(ocp.b_in, w);
    axpy(ocp.lambda_reg, u, out);
    return out;
}

/// Gradient of the reduced cost at u (adjoint evaluation).
inline Vector reduced_gradient(const OcpProblem& ocp, OperatorSolver& solver, const Vector& u) {
    Vector bu = spmv(ocp.b_in, u);
    axpy(1.0, ocp.f, bu);
    Vector x = solver.solve(bu);
    Vector misfit = spmv(ocp.c_out, x);
    axpy(-1.0, ocp.y_ref, misfit);
    Vector w = solver.solve_adjoint(spmv_transpose(ocp.c_out, misfit));
    Vector g = spmv_transpose(ocp.b_in, w);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] += ocp.lambda_reg * (u[i] - ocp.u_ref[i]);
    return g;
}

namespace detail {

inline SolverConfig effective_inner(const OcpSolveOptions& opt, real_t default_tol) {
    SolverConfig inner = opt.inner;
    inner.tol = opt.inner_tol.value_or(default_tol);
    return inner;
}

} // namespace detail

/// Eliminates the state and runs plain CG on the reduced SPD operator. The
/// rhs includes +lambda u_ref so general references are exact. The outer
/// tolerance is tightened (up to twice) if the recovered triple misses the
/// KKT residual contract 10 * cgtol * ||rhs||.
inline KktSolution condensed_solve(const OcpProblem& ocp, const OcpSolveOptions& opt) {
    ocp.validate();
    OperatorSolver solver(ocp.a_split, detail::effective_inner(opt, opt.cgtol / 10.0));

    // rhs = lambda u_ref - B^T A^{-T} C^T (C A^{-1} f - y_ref)
    Vector cf = spmv(ocp.c_out, solver.solve(ocp.f));
    axpy(-1.0, ocp.y_ref, cf);
    Vector rhs = spmv_transpose(ocp.b_in, solver.solve_adjoint(spmv_transpose(ocp.c_out, cf)));
    scale(rhs, -1.0);
    axpy(ocp.lambda_reg, ocp.u_ref, rhs);

    auto reduced = make_operator(ocp.m(), ocp.m(), [&ocp, &solver](const Vector& u) {
        return reduced_apply(ocp, solver, u);
    });

    KktSolution sol;
    const real_t rhs_norm = kkt_rhs_norm(ocp);
    real_t tol = opt.cgtol;
    for (int attempt = 0; attempt < 3; ++attempt) {
        SolverConfig outer;
        outer.method = Method::CG;
        outer.tol = tol;
        outer.max_iter = opt.outer_max_iter;
        auto [u, report] = cg_solve(reduced, rhs, outer);
        sol.u = std::move(u);
        sol.outer_report = std::move(report);

        Vector bu = spmv(ocp.b_in, sol.u);
        axpy(1.0, ocp.f, bu);
        sol.x = solver.solve(bu);
        Vector misfit = spmv(ocp.c_out, sol.x);
        scale(misfit, -1.0);
        axpy(1.0, ocp.y_ref, misfit);
        sol.p = solver.solve_adjoint(spmv_transpose(ocp.c_out, misfit));

        sol.kkt_residual = kkt_residual(ocp, sol.x, sol.u, sol.p);
        if (!sol.outer_report.converged || sol.kkt_residual <= 10.0 * opt.cgtol * rhs_norm)
            break;
        tol *= 0.1;
    }
    sol.inner_iterations = solver.inner_iterations();
    sol.symmetry_degraded = solver.symmetry_degraded();
    sol.outer_report.inner_iterations = sol.inner_iterations;
    sol.outer_report.converged =
        sol.outer_report.converged && sol.kkt_residual <= 10.0 * opt.cgtol * rhs_norm;
    return sol;
}

} // namespace splitkrylov

#endif
