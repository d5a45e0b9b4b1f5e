/// @file preconditioner.hpp
/// @brief Preconditioner construction and application.
///
/// A built Preconditioner is immutable; apply is reentrant.

#ifndef SPLITKRYLOV_PRECOND_PRECONDITIONER_HPP
#define SPLITKRYLOV_PRECOND_PRECONDITIONER_HPP

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "../core/banded.hpp"
#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"
#include "incomplete_cholesky.hpp"
#include "incomplete_lu.hpp"
#include "multigrid.hpp"

namespace splitkrylov {

enum class PrecondKind {
    Identity,
    Jacobi,
    ExactSym,
    IncompleteCholesky,
    IncompleteLU,
    GeoMultigrid,
    DiagonalOf,
};

inline const char* to_string(PrecondKind k) {
    switch (k) {
        case PrecondKind::Identity: return "identity";
        case PrecondKind::Jacobi: return "jacobi";
        case PrecondKind::ExactSym: return "exact_sym";
        case PrecondKind::IncompleteCholesky: return "ichol";
        case PrecondKind::IncompleteLU: return "ilu";
        case PrecondKind::GeoMultigrid: return "multigrid";
        case PrecondKind::DiagonalOf: return "diagonal_of";
    }
    return "?";
}

struct PrecondSpec {
    PrecondKind kind = PrecondKind::Identity;
    real_t drop_tol = 0.0;                        // incomplete factorizations
    int levels = 0;                               // multigrid; 0 = coarsen fully
    int cycles = 2;                               // V-cycles per application
    real_t smoother_weight = 2.0 / 3.0;           // damped Jacobi
    const SparseMatrix* diagonal_source = nullptr; // DiagonalOf
};

namespace detail {

inline bool is_numerically_symmetric(const SparseMatrix& a, real_t rel_tol = 1e-12) {
    if (!a.is_square()) return false;
    const SparseMatrix d = add(a, transpose(a), 1.0, -1.0);
    real_t worst = 0.0;
    for (real_t v : d.values) worst = std::max(worst, std::abs(v));
    return worst <= rel_tol * std::max<real_t>(a.frobenius_norm(), 1.0);
}

/// Exact solve with the (SPD) symmetric part: banded Cholesky when the band
/// factor is affordable, otherwise Jacobi-preconditioned CG to 1e-14.
class ExactSymSolver {
  public:
    static constexpr std::size_t default_band_budget = 40u * 1000u * 1000u;

    explicit ExactSymSolver(const SparseMatrix& h,
                            std::size_t band_budget = default_band_budget) {
        if (h.n_rows <= 50000 && banded_lu_storage(h) <= band_budget) {
            chol_ = std::make_unique<BandedCholesky>(h);
        } else {
            matrix_ = std::make_unique<SparseMatrix>(h);
            inv_diag_.resize(static_cast<std::size_t>(h.n_rows));
            for (index_t i = 0; i < h.n_rows; ++i) {
                const real_t d = h.value_at(i, i);
                if (d <= 0.0)
                    throw BreakdownError("ExactSym: non-positive diagonal in row " +
                                         std::to_string(i));
                inv_diag_[static_cast<std::size_t>(i)] = 1.0 / d;
            }
        }
    }

    Vector solve(const Vector& r) const {
        if (chol_) return chol_->solve(r);
        return cg_to_machine_precision(r);
    }

  private:
    Vector cg_to_machine_precision(const Vector& b) const {
        const SparseMatrix& a = *matrix_;
        Vector x = zeros(a.n_rows);
        Vector r = b;
        Vector z(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
        Vector p = z;
        real_t rz = dot(r, z);
        const real_t bnorm = norm2(b);
        if (bnorm == 0.0) return x;
        const int max_iter = 40000;
        for (int it = 0; it < max_iter; ++it) {
            Vector ap = spmv(a, p);
            const real_t alpha = rz / dot(p, ap);
            axpy(alpha, p, x);
            axpy(-alpha, ap, r);
            if (norm2(r) <= 1e-14 * bnorm) break;
            for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
            const real_t rz_next = dot(r, z);
            const real_t beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
        }
        return x;
    }

    std::unique_ptr<BandedCholesky> chol_;
    std::unique_ptr<SparseMatrix> matrix_;
    Vector inv_diag_;
};

} // namespace detail

class Preconditioner {
  public:
    Preconditioner() = default; // identity for any dimension

    static Preconditioner build(const PrecondSpec& spec, const SparseMatrix& target,
                                const std::optional<GridHint>& grid_hint = std::nullopt) {
        Preconditioner p;
        p.kind_ = spec.kind;
        p.dim_ = target.n_rows;
        switch (spec.kind) {
            case PrecondKind::Identity:
                break;
            case PrecondKind::Jacobi:
                p.inv_diag_ = std::make_shared<Vector>(inverse_diagonal(target, "Jacobi"));
                break;
            case PrecondKind::DiagonalOf: {
                if (spec.diagonal_source == nullptr)
                    throw ConfigError("DiagonalOf preconditioner needs a source matrix");
                p.inv_diag_ = std::make_shared<Vector>(
                    inverse_diagonal(*spec.diagonal_source, "DiagonalOf"));
                p.dim_ = spec.diagonal_source->n_rows;
                break;
            }
            case PrecondKind::ExactSym:
                if (!target.is_square()) throw DimensionError("ExactSym: target must be square");
                if (!detail::is_numerically_symmetric(target))
                    throw StructureError("ExactSym: target is not symmetric");
                p.exact_ = std::make_shared<detail::ExactSymSolver>(target);
                break;
            case PrecondKind::IncompleteCholesky:
                if (!detail::is_numerically_symmetric(target))
                    throw StructureError("IncompleteCholesky: target is not symmetric");
                p.ichol_ = std::make_shared<IncompleteCholesky>(target, spec.drop_tol);
                break;
            case PrecondKind::IncompleteLU:
                p.ilu_ = std::make_shared<IncompleteLU>(target, spec.drop_tol);
                break;
            case PrecondKind::GeoMultigrid: {
                if (!grid_hint)
                    throw ConfigError("GeoMultigrid needs a grid hint describing the hierarchy");
                p.mg_ = std::make_shared<GeometricMultigrid>(target, *grid_hint, spec.levels,
                                                             spec.cycles, spec.smoother_weight);
                break;
            }
        }
        return p;
    }

    PrecondKind kind() const { return kind_; }
    index_t dim() const { return dim_; }

    /// Symmetric as an operator (ILU is the only non-symmetric variant).
    bool is_symmetric() const { return kind_ != PrecondKind::IncompleteLU; }

    /// Applies the target inverse to machine-level accuracy.
    bool is_exact() const { return kind_ == PrecondKind::ExactSym; }

    Vector apply(const Vector& r) const {
        if (dim_ != 0 && static_cast<index_t>(r.size()) != dim_)
            throw DimensionError("Preconditioner::apply: dimension mismatch");
        switch (kind_) {
            case PrecondKind::Identity:
                return r;
            case PrecondKind::Jacobi:
            case PrecondKind::DiagonalOf: {
                Vector z(r.size());
                for (std::size_t i = 0; i < r.size(); ++i) z[i] = (*inv_diag_)[i] * r[i];
                return z;
            }
            case PrecondKind::ExactSym:
                return exact_->solve(r);
            case PrecondKind::IncompleteCholesky:
                return ichol_->solve(r);
            case PrecondKind::IncompleteLU:
                return ilu_->solve(r);
            case PrecondKind::GeoMultigrid:
                return mg_->solve(r);
        }
        return r;
    }

  private:
    static Vector inverse_diagonal(const SparseMatrix& m, const char* who) {
        Vector inv(static_cast<std::size_t>(m.n_rows));
        for (index_t i = 0; i < m.n_rows; ++i) {
            const real_t d = m.value_at(i, i);
            if (d == 0.0)
                throw BreakdownError(std::string(who) + ": zero diagonal in row " +
                                     std::to_string(i));
            inv[static_cast<std::size_t>(i)] = 1.0 / d;
        }
        return inv;
    }

    PrecondKind kind_ = PrecondKind::Identity;
    index_t dim_ = 0;
    std::shared_ptr<Vector> inv_diag_;
    std::shared_ptr<detail::ExactSymSolver> exact_;
    std::shared_ptr<IncompleteCholesky> ichol_;
    std::shared_ptr<IncompleteLU> ilu_;
    std::shared_ptr<GeometricMultigrid> mg_;
};

} // namespace splitkrylov

#endif
