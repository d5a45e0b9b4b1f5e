/// @file incomplete_cholesky.hpp
/// @brief Incomplete Cholesky with threshold dropping (ICT).
///
/// Entries of the original pattern are always kept; a computed fill entry
/// l_ij is dropped when |l_ij| < drop_tol * ||A(i,:)||_2. With drop_tol = 0
/// all fill is kept and the factor is the exact Cholesky factor.

#ifndef SPLITKRYLOV_PRECOND_INCOMPLETE_CHOLESKY_HPP
#define SPLITKRYLOV_PRECOND_INCOMPLETE_CHOLESKY_HPP

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"

namespace splitkrylov {

class IncompleteCholesky {
  public:
    IncompleteCholesky(const SparseMatrix& a, real_t drop_tol) {
        if (!a.is_square()) throw DimensionError("IncompleteCholesky: matrix must be square");
        const index_t n = a.n_rows;
        n_ = n;
        diag_.assign(static_cast<std::size_t>(n), 0.0);
        rows_.resize(static_cast<std::size_t>(n));
        cols_.resize(static_cast<std::size_t>(n));

        std::vector<real_t> work(static_cast<std::size_t>(n), 0.0);
        std::vector<bool> in_pattern(static_cast<std::size_t>(n), false);

        for (index_t i = 0; i < n; ++i) {
            real_t row_norm_sq = 0.0;
            real_t wdiag = 0.0;
            std::set<index_t> active;
            for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
                const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                const real_t v = a.values[static_cast<std::size_t>(k)];
                row_norm_sq += v * v;
                if (j < i) {
                    work[static_cast<std::size_t>(j)] = v;
                    in_pattern[static_cast<std::size_t>(j)] = true;
                    active.insert(j);
                } else if (j == i) {
                    wdiag = v;
                }
            }
            const real_t threshold = drop_tol * std::sqrt(row_norm_sq);

            auto& row = rows_[static_cast<std::size_t>(i)];
            while (!active.empty()) {
                const index_t j = *active.begin();
                active.erase(active.begin());
                const real_t lij = work[static_cast<std::size_t>(j)] / diag_[static_cast<std::size_t>(j)];
                const bool keep =
                    in_pattern[static_cast<std::size_t>(j)] || std::abs(lij) >= threshold;
                work[static_cast<std::size_t>(j)] = 0.0;
                in_pattern[static_cast<std::size_t>(j)] = false;
                if (!keep) continue;
                // update trailing columns of this row using column j of L
                for (const auto& [jrow, v] : cols_[static_cast<std::size_t>(j)]) {
                    work[static_cast<std::size_t>(jrow)] -= lij * v;
                    active.insert(jrow);
                }
                wdiag -= lij * lij;
                row.emplace_back(j, lij);
                cols_[static_cast<std::size_t>(j)].emplace_back(i, lij);
            }
            if (wdiag <= 0.0)
                throw BreakdownError("IncompleteCholesky: non-positive pivot in row " +
                                     std::to_string(i));
            diag_[static_cast<std::size_t>(i)] = std::sqrt(wdiag);
        }
    }

    index_t dim() const { return n_; }

    /// z = (L L^T)^{-1} r
    Vector solve(const Vector& r) const {
        if (static_cast<index_t>(r.size()) != n_)
            throw DimensionError("IncompleteCholesky::solve: size");
        Vector y = r;
        for (index_t i = 0; i < n_; ++i) {
            real_t s = y[static_cast<std::size_t>(i)];
            for (const auto& [j, v] : rows_[static_cast<std::size_t>(i)])
                s -= v * y[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s / diag_[static_cast<std::size_t>(i)];
        }
        for (index_t i = n_ - 1; i >= 0; --i) {
            real_t s = y[static_cast<std::size_t>(i)];
            for (const auto& [jrow, v] : cols_[static_cast<std::size_t>(i)])
                s -= v * y[static_cast<std::size_t>(jrow)];
            y[static_cast<std::size_t>(i)] = s / diag_[static_cast<std::size_t>(i)];
        }
        return y;
    }

    /// L(i,j); j <= i.
    real_t factor_entry(index_t i, index_t j) const {
        if (i == j) return diag_[static_cast<std::size_t>(i)];
        for (const auto& [c, v] : rows_[static_cast<std::size_t>(i)])
            if (c == j) return v;
        return 0.0;
    }

  private:
    index_t n_ = 0;
    std::vector<real_t> diag_;
    std::vector<std::vector<std::pair<index_t, real_t>>> rows_; // strictly lower, ascending
    std::vector<std::vector<std::pair<index_t, real_t>>> cols_; // strictly lower, by column
};

} // namespace splitkrylov

#endif
