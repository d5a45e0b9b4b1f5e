/// @file dense_oracle.hpp
/// @brief Dense spectral oracle for small instances (Eigen-backed).
///
/// Test and validation route, independent of the sparse kernels it checks.

#ifndef SPLITKRYLOV_SPECTRA_DENSE_ORACLE_HPP
#define SPLITKRYLOV_SPECTRA_DENSE_ORACLE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <vector>

#include "../core/linear_operator.hpp"
#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"
#include "../core/vector_ops.hpp"

namespace splitkrylov {

inline constexpr index_t kDenseOracleCap = 2000;

inline void check_dense_cap(index_t n, const char* who) {
    if (n > kDenseOracleCap)
        throw ConfigError(std::string(who) + ": size " + std::to_string(n) +
                          " exceeds the dense oracle cap " + std::to_string(kDenseOracleCap));
}

inline Eigen::MatrixXd to_eigen(const SparseMatrix& a) {
    check_dense_cap(std::max(a.n_rows, a.n_cols), "to_eigen");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n_rows, a.n_cols);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
            m(i, a.col_indices[static_cast<std::size_t>(k)]) +=
                a.values[static_cast<std::size_t>(k)];
    return m;
}

/// Materializes a matrix-free operator column by column.
inline Eigen::MatrixXd materialize(const LinearOperator& op) {
    check_dense_cap(std::max(op.dim_in, op.dim_out), "materialize");
    Eigen::MatrixXd m(op.dim_out, op.dim_in);
    Vector e = zeros(op.dim_in);
    for (index_t j = 0; j < op.dim_in; ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        Vector col = op.apply(e);
        for (index_t i = 0; i < op.dim_out; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(j)] = 0.0;
    }
    return m;
}

/// All singular values, descending.
inline std::vector<real_t> dense_singular_values(const Eigen::MatrixXd& m) {
    check_dense_cap(std::max(m.rows(), m.cols()), "dense_singular_values");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return std::vector<real_t>(sv.data(), sv.data() + sv.size());
}

inline std::vector<real_t> dense_singular_values(const SparseMatrix& a) {
    return dense_singular_values(to_eigen(a));
}

/// Eigenvalues of a symmetric matrix, ascending.
inline std::vector<real_t> dense_symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    check_dense_cap(m.rows(), "dense_symmetric_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<real_t>(ev.data(), ev.data() + ev.size());
}

inline std::vector<real_t> dense_symmetric_eigenvalues(const SparseMatrix& a) {
    return dense_symmetric_eigenvalues(to_eigen(a));
}

} // namespace splitkrylov

#endif
