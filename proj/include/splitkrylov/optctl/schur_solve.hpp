/// @file schur_solve.hpp
/// @brief Direct splitting of the optimality system: CG on the adjoint-variable
/// Schur operator A (C^T C)^{-1} A^T + (1/lambda) B B^T.

#ifndef SPLITKRYLOV_OPTCTL_SCHUR_SOLVE_HPP
#define SPLITKRYLOV_OPTCTL_SCHUR_SOLVE_HPP

#include <memory>
#include <utility>

#include "../core/banded.hpp"
#include "../core/linear_operator.hpp"
#include "../core/vector_ops.hpp"
#include "../krylov/cg.hpp"
#include "kkt.hpp"
#include "ocp_problem.hpp"

namespace splitkrylov {

/// Requires full observation (C square nonsingular); the operator is applied
/// matrix-free, each application costing two spmv with A plus a C^T C solve.
inline KktSolution kkt_schur_solve(const OcpProblem& ocp, const OcpSolveOptions& opt) {
    ocp.validate();
    if (ocp.q() != ocp.n())
        throw ConfigError("kkt_schur_solve: unsupported observation (C must be square "
                          "nonsingular for the direct splitting)");
    const SparseMatrix ctc = matmul(transpose(ocp.c_out), ocp.c_out);
    std::unique_ptr<BandedCholesky> ctc_chol;
    try {
        ctc_chol = std::make_unique<BandedCholesky>(ctc);
    } catch (const BreakdownError&) {
        throw ConfigError("kkt_schur_solve: unsupported observation (C^T C is singular)");
    }

    const index_t n = ocp.n();
    auto schur = make_operator(n, n, [&](const Vector& p) {
        Vector t = ctc_chol->solve(spmv_transpose(ocp.a_split.a, p));
        Vector out = spmv(ocp.a_split.a, t);
        Vector bt = spmv(ocp.b_in, spmv_transpose(ocp.b_in, p));
        axpy(1.0 / ocp.lambda_reg, bt, out);
        return out;
    });

    // rhs = A (C^T C)^{-1} C^T y_ref - B u_ref - f
    Vector rhs = spmv(ocp.a_split.a, ctc_chol->solve(spmv_transpose(ocp.c_out, ocp.y_ref)));
    axpy(-1.0, spmv(ocp.b_in, ocp.u_ref), rhs);
    axpy(-1.0, ocp.f, rhs);

    KktSolution sol;
    const real_t rhs_norm = kkt_rhs_norm(ocp);
    real_t tol = opt.cgtol;
    for (int attempt = 0; attempt < 3; ++attempt) {
        SolverConfig outer;
        outer.method = Method::CG;
        outer.tol = tol;
        outer.max_iter = opt.outer_max_iter;
        auto [p, report] = cg_solve(schur, rhs, outer);
        sol.p = std::move(p);
        sol.outer_report = std::move(report);

        // back-substitute x and u
        Vector t = spmv_transpose(ocp.c_out, ocp.y_ref);
        axpy(-1.0, spmv_transpose(ocp.a_split.a, sol.p), t);
        sol.x = ctc_chol->solve(t);
        sol.u = spmv_transpose(ocp.b_in, sol.p);
        scale(sol.u, 1.0 / ocp.lambda_reg);
        axpy(1.0, ocp.u_ref, sol.u);

        sol.kkt_residual = kkt_residual(ocp, sol.x, sol.u, sol.p);
        if (!sol.outer_report.converged || sol.kkt_residual <= 10.0 * opt.cgtol * rhs_norm)
            break;
        tol *= 0.1;
    }
    sol.outer_report.converged =
        sol.outer_report.converged && sol.kkt_residual <= 10.0 * opt.cgtol * rhs_norm;
    return sol;
}

} // namespace splitkrylov

#endif
