/// @file rapoport.hpp
/// @brief Rapoport's method: residual minimization in the H^{-1} norm.
///
/// Minimizes ||b - (H+S) x_k||_{H^{-1}} over the H-Lanczos space, i.e. the
/// least-squares problem min_y || ||b_hat||_H e_1 - T_{k+1,k} y ||_2, solved
/// by a progressive Givens QR of the tridiagonal factor (MINRES-style R with
/// three diagonals). The Euclidean residual is monitored for stopping; the
/// H^{-1}-norm history (the QR residual) is reported alongside.

#ifndef SPLITKRYLOV_KRYLOV_RAPOPORT_HPP
#define SPLITKRYLOV_KRYLOV_RAPOPORT_HPP

#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "lanczos.hpp"
#include "solver_config.hpp"
#include "widlund.hpp"

namespace splitkrylov {

inline std::pair<Vector, SolveReport> rapoport_solve(const SplitOperator& split, const Vector& b,
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
    report.hinv_residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (cfg.record_iterates) report.iterates.push_back(x);
    if (bnorm == 0.0) {
        report.converged = true;
        report.termination = "converged";
        return {std::move(x), std::move(report)};
    }

    HLanczosProcess proc(split, h_solver, b, cfg.reorthogonalize);

    // progressive QR state: R columns (main, first and second superdiagonal),
    // applied rotations, and the rotated rhs g (last entry = LSQ residual)
    std::vector<real_t> r_main, r_sup1, r_sup2, cos_rot, sin_rot, g;
    g.push_back(proc.state().b_hat_norm);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        const bool advanced = proc.step();
        const auto& st = proc.state();
        const std::size_t k = st.alpha.size();
        if (k == 0) break;

        // new column j = k-1 of the LSQ factor M = [I_k; 0] + T_{k+1,k}
        // (the residual minimized is that of (I + H^{-1}S) x = b_hat)
        const std::size_t j = k - 1;
        real_t top = j >= 1 ? -st.beta[j - 1] : 0.0; // M(j-1,j)
        real_t mid = 1.0 + st.alpha[j];              // M(j,j)
        real_t bot = advanced ? st.beta[j] : 0.0;    // M(j+1,j)
        r_sup2.push_back(0.0);
        r_sup1.push_back(0.0);
        if (j >= 2) {
            const real_t t = cos_rot[j - 2] * 0.0 + sin_rot[j - 2] * top;
            r_sup2[j - 2] = t;
            top = cos_rot[j - 2] * top; // -s*0 + c*top
        }
        if (j >= 1) {
            const real_t t = cos_rot[j - 1] * top + sin_rot[j - 1] * mid;
            mid = -sin_rot[j - 1] * top + cos_rot[j - 1] * mid;
            r_sup1[j - 1] = t;
        }
        const real_t denom = std::hypot(mid, bot);
        const real_t c = denom == 0.0 ? 1.0 : mid / denom;
        const real_t s = denom == 0.0 ? 0.0 : bot / denom;
        cos_rot.push_back(c);
        sin_rot.push_back(s);
        r_main.push_back(denom);
        g.push_back(-s * g[j]);
        g[j] = c * g[j];

        // back-substitute y (R has bandwidth 3)
        std::vector<real_t> y(k, 0.0);
        bool singular_head = false;
        for (std::size_t i = k; i-- > 0;) {
            real_t sum = g[i];
            if (i + 1 < k) sum -= r_sup1[i] * y[i + 1];
            if (i + 2 < k) sum -= r_sup2[i] * y[i + 2];
            if (r_main[i] == 0.0) {
                singular_head = true;
                break;
            }
            y[i] = sum / r_main[i];
        }
        if (singular_head) break; // b was already in the kernel direction

        x = zeros(split.dim());
        for (std::size_t i = 0; i < k; ++i) axpy(y[i], st.v_basis[i], x);
        const real_t relres = norm2(subtract(b, spmv(split.a, x))) / bnorm;
        report.residual_history.push_back(relres);
        report.hinv_residual_history.push_back(std::abs(g[k]) / st.b_hat_norm);
        report.iterations = it;
        if (cfg.record_iterates) report.iterates.push_back(x);
        if (relres <= cfg.tol) {
            report.converged = true;
            break;
        }
        if (!advanced) {
            report.termination = "breakdown";
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
