/// @file operator_solver.hpp
/// @brief Prepared solver for repeated A and A^T solves of a SplitOperator.
///
/// Factorizations and preconditioners are built once and reused; the adjoint
/// system keeps the structure (A^T = H - S). Non-convergence throws a
/// SolveError carrying iteration diagnostics, since callers (Schur operators,
/// OCP pipelines) require successful inner solves. Inner iterations are
/// counted cumulatively; direct solves count zero.

#ifndef SPLITKRYLOV_KRYLOV_OPERATOR_SOLVER_HPP
#define SPLITKRYLOV_KRYLOV_OPERATOR_SOLVER_HPP

#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "../core/banded.hpp"
#include "../core/linear_operator.hpp"
#include "../core/split_operator.hpp"
#include "../core/types.hpp"
#include "cg.hpp"
#include "gmres.hpp"
#include "rapoport.hpp"
#include "solver_config.hpp"
#include "widlund.hpp"

namespace splitkrylov {

class OperatorSolver {
  public:
    OperatorSolver(SplitOperator split, SolverConfig cfg)
        : split_(std::make_shared<SplitOperator>(std::move(split))), cfg_(std::move(cfg)) {
        cfg_.validate();
        switch (cfg_.method) {
            case Method::Direct:
                lu_ = std::make_shared<BandedLU>(split_->a);
                break;
            case Method::GMRES: {
                if (cfg_.precond.kind != PrecondKind::Identity) {
                    const SparseMatrix& target = cfg_.precond.kind == PrecondKind::IncompleteLU
                                                     ? split_->a
                                                     : split_->h;
                    precond_ = Preconditioner::build(cfg_.precond, target, cfg_.grid_hint);
                }
                break;
            }
            case Method::CG:
                if (cfg_.precond.kind != PrecondKind::Identity)
                    precond_ = Preconditioner::build(cfg_.precond, split_->a, cfg_.grid_hint);
                break;
            case Method::Widlund:
            case Method::Rapoport:
                precond_ = detail::build_h_solver(*split_, cfg_);
                symmetry_degraded_ = !precond_.is_exact();
                break;
        }
    }

    index_t dim() const { return split_->dim(); }
    const SolverConfig& config() const { return cfg_; }
    long inner_iterations() const { return inner_iterations_; }
    bool symmetry_degraded() const { return symmetry_degraded_; }
    const SplitOperator& split_operator() const { return *split_; }

    Vector solve(const Vector& rhs) { return run(rhs, false); }
    Vector solve_adjoint(const Vector& rhs) { return run(rhs, true); }

  private:
    const SplitOperator& adjoint_split() {
        if (!adj_split_)
            adj_split_ = std::make_shared<SplitOperator>(
                make_split(split_->h, scale(split_->s, -1.0)));
        return *adj_split_;
    }

    Vector run(const Vector& rhs, bool adjoint) {
        switch (cfg_.method) {
            case Method::Direct: {
                if (!adjoint) return lu_->solve(rhs);
                if (!lu_adj_) lu_adj_ = std::make_shared<BandedLU>(transpose(split_->a));
                return lu_adj_->solve(rhs);
            }
            case Method::GMRES: {
                auto op = adjoint ? make_operator(split_->dim(), split_->dim(),
                                                  [m = split_](const Vector& x) {
                                                      return spmv_transpose(m->a, x);
                                                  })
                                  : operator_from_matrix_ref(split_->a);
                auto [x, report] = gmres_solve(op, rhs, cfg_, precond_);
                return finish(std::move(x), report, adjoint, "gmres");
            }
            case Method::CG: {
                auto op = adjoint ? make_operator(split_->dim(), split_->dim(),
                                                  [m = split_](const Vector& x) {
                                                      return spmv_transpose(m->a, x);
                                                  })
                                  : operator_from_matrix_ref(split_->a);
                auto [x, report] = cg_solve(op, rhs, cfg_, precond_);
                return finish(std::move(x), report, adjoint, "cg");
            }
            case Method::Widlund: {
                const SplitOperator& sys = adjoint ? adjoint_split() : *split_;
                auto [x, report] = widlund_solve(sys, rhs, cfg_, &precond_);
                return finish(std::move(x), report, adjoint, "widlund");
            }
            case Method::Rapoport: {
                const SplitOperator& sys = adjoint ? adjoint_split() : *split_;
                auto [x, report] = rapoport_solve(sys, rhs, cfg_, &precond_);
                return finish(std::move(x), report, adjoint, "rapoport");
            }
        }
        throw ConfigError("OperatorSolver: unknown method");
    }

    Vector finish(Vector x, const SolveReport& report, bool adjoint, const char* name) {
        inner_iterations_ += report.iterations;
        symmetry_degraded_ = symmetry_degraded_ || report.symmetry_degraded;
        if (!report.converged) {
            std::ostringstream msg;
            msg << "inner " << name << (adjoint ? " adjoint" : " state") << " solve failed: "
                << report.iterations << " iterations, final relative residual "
                << (report.residual_history.empty() ? 0.0 : report.residual_history.back())
                << " > tol " << cfg_.tol << " (" << report.termination << ")";
            throw SolveError(msg.str());
        }
        return x;
    }

    std::shared_ptr<SplitOperator> split_;
    std::shared_ptr<SplitOperator> adj_split_;
    SolverConfig cfg_;
    Preconditioner precond_;
    std::shared_ptr<BandedLU> lu_;
    std::shared_ptr<BandedLU> lu_adj_;
    long inner_iterations_ = 0;
    bool symmetry_degraded_ = false;
};

} // namespace splitkrylov

#endif
