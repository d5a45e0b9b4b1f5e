// Shared test helpers: small dense reference routines kept independent of the
// library's sparse kernels, plus random matrix generators.

#ifndef SPLITKRYLOV_TESTS_TEST_SUPPORT_HPP
#define SPLITKRYLOV_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "splitkrylov/core/sparse_matrix.hpp"
#include "splitkrylov/core/split_operator.hpp"

namespace sk_test {

using splitkrylov::index_t;
using splitkrylov::real_t;
using splitkrylov::SparseMatrix;
using splitkrylov::Triplet;
using splitkrylov::Vector;

struct Dense {
    index_t rows = 0, cols = 0;
    std::vector<real_t> v;
    Dense() = default;
    Dense(index_t r, index_t c) : rows(r), cols(c), v(static_cast<std::size_t>(r * c), 0.0) {}
    real_t& operator()(index_t i, index_t j) {
        return v[static_cast<std::size_t>(i * cols + j)];
    }
    real_t operator()(index_t i, index_t j) const {
        return v[static_cast<std::size_t>(i * cols + j)];
    }
};

// Reads the raw CSR arrays directly, bypassing library accessors.
inline Dense csr_to_dense(const SparseMatrix& a) {
    Dense d(a.n_rows, a.n_cols);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k)
            d(i, a.col_indices[static_cast<std::size_t>(k)]) +=
                a.values[static_cast<std::size_t>(k)];
    return d;
}

inline Vector dense_matvec(const Dense& a, const Vector& x) {
    Vector y(static_cast<std::size_t>(a.rows), 0.0);
    for (index_t i = 0; i < a.rows; ++i)
        for (index_t j = 0; j < a.cols; ++j) y[static_cast<std::size_t>(i)] += a(i, j) * x[static_cast<std::size_t>(j)];
    return y;
}

inline Dense dense_transpose(const Dense& a) {
    Dense t(a.cols, a.rows);
    for (index_t i = 0; i < a.rows; ++i)
        for (index_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

inline Dense dense_matmul(const Dense& a, const Dense& b) {
    Dense c(a.rows, b.cols);
    for (index_t i = 0; i < a.rows; ++i)
        for (index_t k = 0; k < a.cols; ++k) {
            const real_t av = a(i, k);
            if (av == 0.0) continue;
            for (index_t j = 0; j < b.cols; ++j) c(i, j) += av * b(k, j);
        }
    return c;
}

// Gaussian elimination with partial pivoting.
inline Vector dense_solve(Dense a, Vector b) {
    const index_t n = a.rows;
    std::vector<index_t> piv(static_cast<std::size_t>(n));
    for (index_t k = 0; k < n; ++k) {
        index_t p = k;
        for (index_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == 0.0) throw std::runtime_error("dense_solve: singular");
        if (p != k) {
            for (index_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
        }
        for (index_t i = k + 1; i < n; ++i) {
            const real_t l = a(i, k) / a(k, k);
            a(i, k) = 0.0;
            for (index_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
            b[static_cast<std::size_t>(i)] -= l * b[static_cast<std::size_t>(k)];
        }
    }
    Vector x(static_cast<std::size_t>(n), 0.0);
    for (index_t i = n - 1; i >= 0; --i) {
        real_t s = b[static_cast<std::size_t>(i)];
        for (index_t j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / a(i, i);
    }
    return x;
}

// Lower-triangular Cholesky factor, no pivoting.
inline Dense dense_cholesky(const Dense& a) {
    const index_t n = a.rows;
    Dense l(n, n);
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j <= i; ++j) {
            real_t s = a(i, j);
            for (index_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("dense_cholesky: not SPD");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

inline SparseMatrix random_sparse(std::mt19937& gen, index_t rows, index_t cols, double density) {
    std::uniform_real_distribution<real_t> val(-1.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Triplet> t;
    for (index_t i = 0; i < rows; ++i)
        for (index_t j = 0; j < cols; ++j)
            if (coin(gen) < density) t.push_back({i, j, val(gen)});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

// Random SPD matrix: strictly diagonally dominant symmetric pattern.
inline SparseMatrix random_spd(std::mt19937& gen, index_t n, double density) {
    std::uniform_real_distribution<real_t> val(-1.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Triplet> t;
    std::vector<real_t> rowsum(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j)
            if (coin(gen) < density) {
                const real_t v = val(gen);
                t.push_back({i, j, v});
                t.push_back({j, i, v});
                rowsum[static_cast<std::size_t>(i)] += std::abs(v);
                rowsum[static_cast<std::size_t>(j)] += std::abs(v);
            }
    for (index_t i = 0; i < n; ++i) t.push_back({i, i, rowsum[static_cast<std::size_t>(i)] + 1.0});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

// Random skew-symmetric matrix.
inline SparseMatrix random_skew(std::mt19937& gen, index_t n, double density,
                                real_t amplitude = 1.0) {
    std::uniform_real_distribution<real_t> val(-amplitude, amplitude);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Triplet> t;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j)
            if (coin(gen) < density) {
                const real_t v = val(gen);
                t.push_back({i, j, v});
                t.push_back({j, i, -v});
            }
    if (t.empty()) t.push_back({0, 0, 0.0});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

inline splitkrylov::SplitOperator random_split_operator(std::mt19937& gen, index_t n,
                                                        double density, real_t skew_amplitude) {
    return splitkrylov::make_split(random_spd(gen, n, density),
                                   random_skew(gen, n, density, skew_amplitude));
}

inline Vector random_dense_vector(std::mt19937& gen, index_t n, real_t lo = -1.0, real_t hi = 1.0) {
    std::uniform_real_distribution<real_t> val(lo, hi);
    Vector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = val(gen);
    return v;
}

} // namespace sk_test

#endif
