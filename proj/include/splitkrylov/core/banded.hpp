/// @file banded.hpp
/// @brief Banded LU (partial pivoting) and banded Cholesky direct solvers.
///
/// The built-in discretizations use natural grid ordering, so their matrices
/// have small bandwidth and band factorizations are the appropriate direct
/// kernels (no fill-reducing permutations, which are out of scope).

#ifndef SPLITKRYLOV_CORE_BANDED_HPP
#define SPLITKRYLOV_CORE_BANDED_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sparse_matrix.hpp"
#include "types.hpp"

namespace splitkrylov {

inline void bandwidths(const SparseMatrix& a, index_t& lower, index_t& upper) {
    lower = 0;
    upper = 0;
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
            const index_t j = a.col_indices[static_cast<std::size_t>(k)];
            lower = std::max(lower, i - j);
            upper = std::max(upper, j - i);
        }
}

/// Doubles needed by a banded LU factor of the given matrix.
inline std::size_t banded_lu_storage(const SparseMatrix& a) {
    index_t kl = 0, ku = 0;
    bandwidths(a, kl, ku);
    return static_cast<std::size_t>(a.n_rows) * static_cast<std::size_t>(2 * kl + ku + 1);
}

/// LU factorization with partial pivoting in band storage.
class BandedLU {
  public:
    explicit BandedLU(const SparseMatrix& a) {
        if (!a.is_square()) throw DimensionError("BandedLU: matrix must be square");
        n_ = a.n_rows;
        bandwidths(a, kl_, ku_);
        width_ = 2 * kl_ + ku_ + 1;
        band_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(width_), 0.0);
        piv_.resize(static_cast<std::size_t>(n_));
        for (index_t i = 0; i < a.n_rows; ++i)
            for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
                at(i, a.col_indices[static_cast<std::size_t>(k)]) =
                    a.values[static_cast<std::size_t>(k)];
        factor();
    }

    index_t dim() const { return n_; }

    Vector solve(const Vector& b) const {
        if (static_cast<index_t>(b.size()) != n_) throw DimensionError("BandedLU::solve: size");
        Vector x = b;
        for (index_t k = 0; k < n_; ++k) {
            const index_t p = piv_[static_cast<std::size_t>(k)];
            if (p != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
            const index_t iend = std::min(k + kl_, n_ - 1);
            for (index_t i = k + 1; i <= iend; ++i)
                x[static_cast<std::size_t>(i)] -= at(i, k) * x[static_cast<std::size_t>(k)];
        }
        for (index_t i = n_ - 1; i >= 0; --i) {
            const index_t jend = std::min(i + ku_ + kl_, n_ - 1);
            real_t s = x[static_cast<std::size_t>(i)];
            for (index_t j = i + 1; j <= jend; ++j) s -= at(i, j) * x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(i)] = s / at(i, i);
        }
        return x;
    }

  private:
    real_t& at(index_t i, index_t j) {
        return band_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(j - i + kl_)];
    }
    real_t at(index_t i, index_t j) const {
        return band_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(j - i + kl_)];
    }

    void factor() {
        for (index_t k = 0; k < n_; ++k) {
            const index_t iend = std::min(k + kl_, n_ - 1);
            index_t p = k;
            real_t best = std::abs(at(k, k));
            for (index_t i = k + 1; i <= iend; ++i)
                if (std::abs(at(i, k)) > best) {
                    best = std::abs(at(i, k));
                    p = i;
                }
            if (best == 0.0)
                throw BreakdownError("BandedLU: zero pivot column " + std::to_string(k));
            piv_[static_cast<std::size_t>(k)] = p;
            const index_t jend = std::min(k + ku_ + kl_, n_ - 1);
            if (p != k)
                for (index_t j = k; j <= jend; ++j) std::swap(at(k, j), at(p, j));
            for (index_t i = k + 1; i <= iend; ++i) {
                const real_t l = at(i, k) / at(k, k);
                at(i, k) = l;
                for (index_t j = k + 1; j <= jend; ++j) at(i, j) -= l * at(k, j);
            }
        }
    }

    index_t n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
    std::vector<real_t> band_;
    std::vector<index_t> piv_;
};

/// Cholesky factorization of a symmetric positive definite band matrix.
class BandedCholesky {
  public:
    explicit BandedCholesky(const SparseMatrix& a) {
        if (!a.is_square()) throw DimensionError("BandedCholesky: matrix must be square");
        n_ = a.n_rows;
        index_t kl = 0, ku = 0;
        bandwidths(a, kl, ku);
        bw_ = std::max(kl, ku);
        width_ = bw_ + 1;
        band_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(width_), 0.0);
        for (index_t i = 0; i < a.n_rows; ++i)
            for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
                const index_t j = a.col_indices[static_cast<std::size_t>(k)];
                if (j <= i) at(i, j) = a.values[static_cast<std::size_t>(k)];
            }
        factor();
    }

    index_t dim() const { return n_; }
    index_t bandwidth() const { return bw_; }

    Vector solve(const Vector& b) const {
        if (static_cast<index_t>(b.size()) != n_)
            throw DimensionError("BandedCholesky::solve: size");
        Vector x = b;
        for (index_t i = 0; i < n_; ++i) {
            real_t s = x[static_cast<std::size_t>(i)];
            const index_t j0 = std::max<index_t>(0, i - bw_);
            for (index_t j = j0; j < i; ++j) s -= at(i, j) * x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(i)] = s / at(i, i);
        }
        for (index_t i = n_ - 1; i >= 0; --i) {
            real_t s = x[static_cast<std::size_t>(i)];
            const index_t jend = std::min(i + bw_, n_ - 1);
            for (index_t j = i + 1; j <= jend; ++j) s -= at(j, i) * x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(i)] = s / at(i, i);
        }
        return x;
    }

    /// L(i,j) for j <= i within the band (zero otherwise).
    real_t factor_entry(index_t i, index_t j) const {
        if (j > i || i - j > bw_) return 0.0;
        return at(i, j);
    }

  private:
    real_t& at(index_t i, index_t j) {
        return band_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(i - j)];
    }
    real_t at(index_t i, index_t j) const {
        return band_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(i - j)];
    }

    void factor() {
        for (index_t i = 0; i < n_; ++i) {
            const index_t j0 = std::max<index_t>(0, i - bw_);
            for (index_t j = j0; j < i; ++j) {
                real_t s = at(i, j);
                const index_t k0 = std::max(j0, std::max<index_t>(0, j - bw_));
                for (index_t k = k0; k < j; ++k) s -= at(i, k) * at(j, k);
                at(i, j) = s / at(j, j);
            }
            real_t d = at(i, i);
            for (index_t k = j0; k < i; ++k) d -= at(i, k) * at(i, k);
            if (d <= 0.0)
                throw BreakdownError("BandedCholesky: non-positive pivot in row " +
                                     std::to_string(i));
            at(i, i) = std::sqrt(d);
        }
    }

    index_t n_ = 0, bw_ = 0, width_ = 0;
    std::vector<real_t> band_;
};

} // namespace splitkrylov

#endif
