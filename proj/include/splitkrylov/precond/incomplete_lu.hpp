/// @file incomplete_lu.hpp
/// @brief Incomplete LU with threshold dropping (ILUT without fill caps).
///
/// Same drop rule as the incomplete Cholesky: original-pattern entries are
/// kept, computed fill below drop_tol * ||A(i,:)||_2 is discarded.

#ifndef SPLITKRYLOV_PRECOND_INCOMPLETE_LU_HPP
#define SPLITKRYLOV_PRECOND_INCOMPLETE_LU_HPP

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"

namespace splitkrylov {

class IncompleteLU {
  public:
    IncompleteLU(const SparseMatrix& a, real_t drop_tol) {
        if (!a.is_square()) throw DimensionError("IncompleteLU: matrix must be square");
        const index_t n = a.n_rows;
        n_ = n;
        lower_.resize(static_cast<std::size_t>(n));
        upper_.resize(static_cast<std::size_t>(n));
        udiag_.assign(static_cast<std::size_t>(n), 0.0);

        std::vector<real_t> work(static_cast<std::size_t>(n), 0.0);
        std::vector<bool> in_pattern(static_cast<std::size_t>(n), false);

        for (index_t i = 0; i < n; ++i) {
            real_t row_norm_sq = 0.0;
            std::set<index_t> active;
            for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
                const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                const real_t v = a.values[static_cast<std::size_t>(k)];
                row_norm_sq += v * v;
                work[static_cast<std::size_t>(j)] = v;
                in_pattern[static_cast<std::size_t>(j)] = true;
                active.insert(j);
            }
            const real_t threshold = drop_tol * std::sqrt(row_norm_sq);

            // scatter targets are always to the right of the pivot column, so
            // popped columns never receive further updates
            while (!active.empty() && *active.begin() < i) {
                const index_t k = *active.begin();
                active.erase(active.begin());
                const real_t lik =
                    work[static_cast<std::size_t>(k)] / udiag_[static_cast<std::size_t>(k)];
                const bool keep =
                    in_pattern[static_cast<std::size_t>(k)] || std::abs(lik) >= threshold;
                work[static_cast<std::size_t>(k)] = 0.0;
                in_pattern[static_cast<std::size_t>(k)] = false;
                if (!keep) continue;
                lower_[static_cast<std::size_t>(i)].emplace_back(k, lik);
                for (const auto& [col, uval] : upper_[static_cast<std::size_t>(k)]) {
                    work[static_cast<std::size_t>(col)] -= lik * uval;
                    active.insert(col);
                }
            }
            // remaining active columns are >= i: the U row
            for (index_t j : active) {
                const real_t v = work[static_cast<std::size_t>(j)];
                if (j == i) {
                    udiag_[static_cast<std::size_t>(i)] = v;
                } else if (in_pattern[static_cast<std::size_t>(j)] || std::abs(v) >= threshold) {
                    upper_[static_cast<std::size_t>(i)].emplace_back(j, v);
                }
                work[static_cast<std::size_t>(j)] = 0.0;
                in_pattern[static_cast<std::size_t>(j)] = false;
            }
            if (udiag_[static_cast<std::size_t>(i)] == 0.0)
                throw BreakdownError("IncompleteLU: zero pivot in row " + std::to_string(i));
        }
    }

    index_t dim() const { return n_; }

    /// z = (L U)^{-1} r with unit-diagonal L.
    Vector solve(const Vector& r) const {
        if (static_cast<index_t>(r.size()) != n_) throw DimensionError("IncompleteLU::solve: size");
        Vector y = r;
        for (index_t i = 0; i < n_; ++i) {
            real_t s = y[static_cast<std::size_t>(i)];
            for (const auto& [j, v] : lower_[static_cast<std::size_t>(i)])
                s -= v * y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        for (index_t i = n_ - 1; i >= 0; --i) {
            real_t s = y[static_cast<std::size_t>(i)];
            for (const auto& [j, v] : upper_[static_cast<std::size_t>(i)])
                s -= v * y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s / udiag_[static_cast<std::size_t>(i)];
        }
        return y;
    }

  private:
    index_t n_ = 0;
    std::vector<std::vector<std::pair<index_t, real_t>>> lower_; // strictly lower, ascending
    std::vector<std::vector<std::pair<index_t, real_t>>> upper_; // strictly upper, ascending
    std::vector<real_t> udiag_;
};

} // namespace splitkrylov

#endif
