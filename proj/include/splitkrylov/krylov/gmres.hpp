/// @file gmres.hpp
/// @brief Left-preconditioned restarted GMRES with modified Gram-Schmidt.

#ifndef SPLITKRYLOV_KRYLOV_GMRES_HPP
#define SPLITKRYLOV_KRYLOV_GMRES_HPP

#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include "../core/linear_operator.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "solver_config.hpp"

namespace splitkrylov {

/// Minimizes the preconditioned residual ||P(b - A x)|| over the Krylov
/// space; restarts keep the current iterate. Termination is on the relative
/// preconditioned residual.
inline std::pair<Vector, SolveReport> gmres_solve(const LinearOperator& op, const Vector& b,
                                                  const SolverConfig& cfg,
                                                  const Preconditioner& precond = {}) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    const index_t n = op.dim_in;
    Vector x = zeros(n);

    const Vector pb = precond.apply(b);
    const real_t pbnorm = norm2(pb);
    report.residual_history.push_back(pbnorm == 0.0 ? 0.0 : 1.0);
    if (cfg.record_iterates) report.iterates.push_back(x);
    if (pbnorm == 0.0) {
        report.converged = true;
        report.termination = "converged";
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {std::move(x), std::move(report)};
    }

    const int restart = cfg.restart.value_or(cfg.max_iter);
    int total_iters = 0;
    bool done = false;
    while (!done && total_iters < cfg.max_iter) {
        Vector r = precond.apply(subtract(b, op.apply(x)));
        real_t beta = norm2(r);
        const real_t cycle_start_relres = beta / pbnorm;
        if (cycle_start_relres <= cfg.tol) {
            report.converged = true;
            break;
        }
        std::vector<Vector> basis;
        basis.push_back(scaled(r, 1.0 / beta));
        std::vector<std::vector<real_t>> hess; // hess[j] = column j, length j+2
        Vector g(1, beta);                     // rotated rhs
        std::vector<real_t> givens_c, givens_s;

        int j = 0;
        for (; j < restart && total_iters < cfg.max_iter; ++j, ++total_iters) {
            Vector w = precond.apply(op.apply(basis[static_cast<std::size_t>(j)]));
            std::vector<real_t> hcol(static_cast<std::size_t>(j) + 2, 0.0);
            for (int i = 0; i <= j; ++i) {
                const real_t hij = dot(w, basis[static_cast<std::size_t>(i)]);
                hcol[static_cast<std::size_t>(i)] = hij;
                axpy(-hij, basis[static_cast<std::size_t>(i)], w);
            }
            const real_t hnext = norm2(w);
            hcol[static_cast<std::size_t>(j) + 1] = hnext;

            // apply accumulated Givens rotations to the new column
            for (int i = 0; i < j; ++i) {
                const real_t t = givens_c[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i)] +
                                 givens_s[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i) + 1];
                hcol[static_cast<std::size_t>(i) + 1] =
                    -givens_s[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i)] +
                    givens_c[static_cast<std::size_t>(i)] * hcol[static_cast<std::size_t>(i) + 1];
                hcol[static_cast<std::size_t>(i)] = t;
            }
            const real_t denom = std::hypot(hcol[static_cast<std::size_t>(j)], hnext);
            const real_t c = denom == 0.0 ? 1.0 : hcol[static_cast<std::size_t>(j)] / denom;
            const real_t s = denom == 0.0 ? 0.0 : hnext / denom;
            givens_c.push_back(c);
            givens_s.push_back(s);
            hcol[static_cast<std::size_t>(j)] = denom;
            hcol[static_cast<std::size_t>(j) + 1] = 0.0;
            g.push_back(-s * g[static_cast<std::size_t>(j)]);
            g[static_cast<std::size_t>(j)] *= c;
            hess.push_back(std::move(hcol));

            const real_t relres = std::abs(g[static_cast<std::size_t>(j) + 1]) / pbnorm;
            report.residual_history.push_back(relres);

            const bool lucky = hnext <= 1e-14 * beta;
            if (relres <= cfg.tol || lucky || j + 1 == restart || total_iters + 1 >= cfg.max_iter ||
                cfg.record_iterates) {
                // back-substitute y and form the candidate iterate
                std::vector<real_t> y(static_cast<std::size_t>(j) + 1, 0.0);
                for (int i = j; i >= 0; --i) {
                    real_t sum = g[static_cast<std::size_t>(i)];
                    for (int k = i + 1; k <= j; ++k)
                        sum -= hess[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                               y[static_cast<std::size_t>(k)];
                    y[static_cast<std::size_t>(i)] =
                        sum / hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
                }
                Vector candidate = x;
                for (int i = 0; i <= j; ++i)
                    axpy(y[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i)], candidate);
                if (cfg.record_iterates) report.iterates.push_back(candidate);
                if (relres <= cfg.tol || lucky || j + 1 == restart ||
                    total_iters + 1 >= cfg.max_iter) {
                    x = std::move(candidate);
                    if (relres <= cfg.tol || lucky) {
                        report.converged = true;
                        done = true;
                    }
                    if (!done && j + 1 == restart) {
                        // stagnation across a full restart cycle
                        if (relres >= cycle_start_relres * (1.0 - 1e-12)) {
                            report.stagnated = true;
                            done = true;
                        }
                    }
                    ++total_iters;
                    ++j;
                    break;
                }
            }
            if (lucky) break;
            basis.push_back(scaled(w, 1.0 / hnext));
        }
    }
    report.iterations = total_iters;
    report.termination = report.converged ? "converged"
                         : report.stagnated ? "stagnated"
                                            : "max_iter";
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), std::move(report)};
}

} // namespace splitkrylov

#endif
