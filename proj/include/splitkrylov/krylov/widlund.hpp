/// @file widlund.hpp
/// @brief Widlund's short-recurrence method for (H + S) x = b.
///
/// On the H-Lanczos basis the iterate is x_k = V_k y_k with
/// (I_k + T_{k,k}) y_k = ||b_hat||_H e_1. The small system is solved per
/// iteration; I + T has positive leading minors (det recurrence
/// d_k = (1 + a_k) d_{k-1} + b_{k-1}^2 d_{k-2}), so no pivoting is needed.

#ifndef SPLITKRYLOV_KRYLOV_WIDLUND_HPP
#define SPLITKRYLOV_KRYLOV_WIDLUND_HPP

#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "lanczos.hpp"
#include "solver_config.hpp"

namespace splitkrylov {

namespace detail {

/// Solves (I + T_kk) y = rhs_scale * e_1 for the skew-tridiagonal T given by
/// alpha (diagonal) and beta (sub/super magnitudes), first k columns.
inline std::vector<real_t> solve_widlund_system(const std::vector<real_t>& alpha,
                                                const std::vector<real_t>& beta, std::size_t k,
                                                real_t rhs_scale) {
    std::vector<real_t> diag(k), sub(k, 0.0), sup(k, 0.0), y(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) diag[i] = 1.0 + alpha[i];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        sub[i + 1] = beta[i];  // T(i+1,i)
        sup[i] = -beta[i];     // T(i,i+1)
    }
    y[0] = rhs_scale;
    for (std::size_t i = 1; i < k; ++i) {
        const real_t l = sub[i] / diag[i - 1];
        diag[i] -= l * sup[i - 1];
        y[i] -= l * y[i - 1];
    }
    y[k - 1] /= diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) y[i] = (y[i] - sup[i] * y[i + 1]) / diag[i];
    return y;
}

inline Preconditioner build_h_solver(const SplitOperator& split, const SolverConfig& cfg) {
    PrecondSpec spec = cfg.precond;
    if (spec.kind == PrecondKind::Identity) spec.kind = PrecondKind::ExactSym;
    return Preconditioner::build(spec, split.h, cfg.grid_hint);
}

} // namespace detail

/// The preconditioner in cfg resolves to the H-solver (ExactSym when left at
/// the default); a prebuilt one may be passed for repeated solves. An inexact
/// H-solver is allowed but flagged: the short recurrence loses its footing
/// without exact symmetry.
inline std::pair<Vector, SolveReport> widlund_solve(const SplitOperator& split, const Vector& b,
                                                    const SolverConfig& cfg,
                                                    const Preconditioner* prebuilt_h = nullptr) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    const Preconditioner h_solver =
        prebuilt_h ? *prebuilt_h : detail::build_h_solver(split, cfg);
    report.symmetry_degraded = !h_solver.is_exact();

    Vector x = zeros(split.dim());
    const real_t bnorm = norm2(b);
    report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (cfg.record_iterates) report.iterates.push_back(x);
    if (bnorm == 0.0) {
        report.converged = true;
        report.termination = "converged";
        return {std::move(x), std::move(report)};
    }

    HLanczosProcess proc(split, h_solver, b, cfg.reorthogonalize);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const bool advanced = proc.step();
        const auto& st = proc.state();
        const std::size_t k = st.alpha.size(); // columns available (incl. breakdown column)
        if (k == 0) break;
        const auto y = detail::solve_widlund_system(st.alpha, st.beta, k, st.b_hat_norm);
        x = zeros(split.dim());
        for (std::size_t i = 0; i < k; ++i) axpy(y[i], st.v_basis[i], x);
        const real_t relres = norm2(subtract(b, spmv(split.a, x))) / bnorm;
        report.residual_history.push_back(relres);
        report.iterations = it;
        if (cfg.record_iterates) report.iterates.push_back(x);
        if (relres <= cfg.tol) {
            report.converged = true;
            break;
        }
        if (!advanced) {
            // exact invariant subspace reached; the iterate is as good as the
            // H-solver allows
            report.termination = "breakdown";
            report.converged = relres <= cfg.tol;
            break;
        }
    }
    if (report.termination.empty())
        report.termination = report.converged ? "converged" : "max_iter";
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), std::move(report)};
}

} // namespace splitkrylov

#endif
