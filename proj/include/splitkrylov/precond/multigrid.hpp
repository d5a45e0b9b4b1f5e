/// @file multigrid.hpp
/// @brief Geometric multigrid V-cycles for structured-grid SPD operators.
///
/// Full coarsening with linear-interpolation prolongation, R = P^T, Galerkin
/// coarse operators, damped-Jacobi smoothing (2 pre + 2 post sweeps). Valid
/// for the built-in discretizations; per-axis interior node counts must
/// follow the 2^k - 1 pattern to coarsen.

#ifndef SPLITKRYLOV_PRECOND_MULTIGRID_HPP
#define SPLITKRYLOV_PRECOND_MULTIGRID_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "../core/banded.hpp"
#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"

namespace splitkrylov {

/// Structured-grid description: per-axis interior node counts.
struct GridHint {
    int dim = 1;
    std::array<index_t, 3> interior = {0, 0, 0};

    index_t total() const {
        index_t t = 1;
        for (int d = 0; d < dim; ++d) t *= interior[static_cast<std::size_t>(d)];
        return t;
    }
};

namespace detail {

/// 1D linear interpolation from (n_f - 1)/2 coarse to n_f fine interior nodes.
inline SparseMatrix prolongation_1d(index_t n_fine) {
    const index_t n_coarse = (n_fine - 1) / 2;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(3 * n_coarse));
    for (index_t c = 0; c < n_coarse; ++c) {
        const index_t f = 2 * c + 1;
        t.push_back({f, c, 1.0});
        t.push_back({f - 1, c, 0.5});
        t.push_back({f + 1, c, 0.5});
    }
    return SparseMatrix::from_triplets(n_fine, n_coarse, std::move(t));
}

} // namespace detail

class GeometricMultigrid {
  public:
    GeometricMultigrid(const SparseMatrix& a, const GridHint& hint, int levels, int cycles,
                       real_t smoother_weight)
        : cycles_(cycles), weight_(smoother_weight) {
        if (hint.total() != a.n_rows)
            throw HierarchyError("GeoMultigrid: grid hint covers " + std::to_string(hint.total()) +
                                 " nodes, matrix has " + std::to_string(a.n_rows) + " rows");
        GridHint g = hint;
        ops_.push_back(a);
        while (true) {
            const bool depth_reached = levels > 0 && static_cast<int>(ops_.size()) >= levels;
            if (depth_reached) break;
            bool coarsenable = true;
            for (int d = 0; d < g.dim; ++d) {
                const index_t n = g.interior[static_cast<std::size_t>(d)];
                if (n < 3 || n % 2 == 0) coarsenable = false;
            }
            if (!coarsenable) {
                if (levels > 0)
                    throw HierarchyError(
                        "GeoMultigrid: grid not compatible with requested hierarchy depth "
                        "(interior counts must follow the 2^k - 1 pattern)");
                break;
            }
            SparseMatrix p = detail::prolongation_1d(g.interior[0]);
            for (int d = 1; d < g.dim; ++d)
                p = kron(p, detail::prolongation_1d(g.interior[static_cast<std::size_t>(d)]));
            SparseMatrix r = transpose(p);
            ops_.push_back(matmul(r, matmul(ops_.back(), p)));
            prolongs_.push_back(std::move(p));
            for (int d = 0; d < g.dim; ++d)
                g.interior[static_cast<std::size_t>(d)] =
                    (g.interior[static_cast<std::size_t>(d)] - 1) / 2;
        }
        if (ops_.size() < 2)
            throw HierarchyError("GeoMultigrid: grid does not admit a second level "
                                 "(interior counts must follow the 2^k - 1 pattern)");
        inv_diag_.resize(ops_.size());
        for (std::size_t l = 0; l + 1 < ops_.size(); ++l) {
            inv_diag_[l].assign(static_cast<std::size_t>(ops_[l].n_rows), 0.0);
            for (index_t i = 0; i < ops_[l].n_rows; ++i) {
                const real_t d = ops_[l].value_at(i, i);
                if (d == 0.0) throw BreakdownError("GeoMultigrid: zero diagonal in smoother");
                inv_diag_[l][static_cast<std::size_t>(i)] = 1.0 / d;
            }
        }
        coarse_solver_ = std::make_unique<BandedCholesky>(ops_.back());
    }

    int levels() const { return static_cast<int>(ops_.size()); }

    /// Approximates target^{-1} r by `cycles` V-cycles from a zero guess.
    Vector solve(const Vector& r) const {
        Vector z = zeros(ops_.front().n_rows);
        for (int c = 0; c < cycles_; ++c) v_cycle(0, r, z);
        return z;
    }

    /// One V-cycle improving z in place (exposed for contraction studies).
    void v_cycle(std::size_t level, const Vector& b, Vector& z) const {
        if (level + 1 == ops_.size()) {
            z = coarse_solver_->solve(b);
            return;
        }
        smooth(level, b, z, 2);
        Vector residual = subtract(b, spmv(ops_[level], z));
        Vector coarse_rhs = spmv_transpose(prolongs_[level], residual);
        Vector coarse_err = zeros(ops_[level + 1].n_rows);
        v_cycle(level + 1, coarse_rhs, coarse_err);
        axpy(1.0, spmv(prolongs_[level], coarse_err), z);
        smooth(level, b, z, 2);
    }

  private:
    void smooth(std::size_t level, const Vector& b, Vector& z, int sweeps) const {
        for (int s = 0; s < sweeps; ++s) {
            Vector r = subtract(b, spmv(ops_[level], z));
            for (std::size_t i = 0; i < r.size(); ++i)
                z[i] += weight_ * inv_diag_[level][i] * r[i];
        }
    }

    int cycles_ = 2;
    real_t weight_ = 2.0 / 3.0;
    std::vector<SparseMatrix> ops_;
    std::vector<SparseMatrix> prolongs_;
    std::vector<Vector> inv_diag_;
    std::unique_ptr<BandedCholesky> coarse_solver_;
};

} // namespace splitkrylov

#endif
