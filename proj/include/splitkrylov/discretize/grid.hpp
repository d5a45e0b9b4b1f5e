/// @file grid.hpp
/// @brief 1D finite-difference building blocks combined by Kronecker products.
///
/// Index convention everywhere: axis 0 is the slowest-varying index, so a 2D
/// operator acting along x is kron(op_x, identity_y).

#ifndef SPLITKRYLOV_DISCRETIZE_GRID_HPP
#define SPLITKRYLOV_DISCRETIZE_GRID_HPP

#include <vector>

#include "../core/sparse_matrix.hpp"
#include "../core/types.hpp"

namespace splitkrylov {
namespace grid {

/// (1/h^2) tridiag(-1, 2, -1) on n interior nodes (homogeneous Dirichlet).
inline SparseMatrix dirichlet_laplacian_1d(index_t n, real_t h) {
    const real_t w = 1.0 / (h * h);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(3 * n));
    for (index_t i = 0; i < n; ++i) {
        t.push_back({i, i, 2.0 * w});
        if (i > 0) t.push_back({i, i - 1, -w});
        if (i + 1 < n) t.push_back({i, i + 1, -w});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

/// (b/2h) tridiag(-1, 0, 1) on n interior nodes; exactly skew-symmetric.
inline SparseMatrix centered_advection_1d(index_t n, real_t h, real_t b) {
    const real_t w = b / (2.0 * h);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(2 * n));
    for (index_t i = 0; i < n; ++i) {
        if (i > 0) t.push_back({i, i - 1, -w});
        if (i + 1 < n) t.push_back({i, i + 1, w});
    }
    if (t.empty()) t.push_back({0, 0, 0.0});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

/// (1/h^2) graph Laplacian on all n_nodes nodes (homogeneous Neumann);
/// symmetric positive semidefinite with constant kernel.
inline SparseMatrix neumann_laplacian_1d(index_t n_nodes, real_t h) {
    const real_t w = 1.0 / (h * h);
    std::vector<Triplet> t;
    for (index_t i = 0; i < n_nodes; ++i) {
        const real_t diag = (i == 0 || i + 1 == n_nodes) ? w : 2.0 * w;
        t.push_back({i, i, diag});
        if (i > 0) t.push_back({i, i - 1, -w});
        if (i + 1 < n_nodes) t.push_back({i, i + 1, -w});
    }
    return SparseMatrix::from_triplets(n_nodes, n_nodes, std::move(t));
}

/// Centered first difference from all (n+2) nodes to the n interior nodes.
inline SparseMatrix centered_difference_interior_from_all(index_t n_interior, real_t h) {
    const real_t w = 1.0 / (2.0 * h);
    std::vector<Triplet> t;
    for (index_t i = 0; i < n_interior; ++i) {
        t.push_back({i, i, -w});     // node (i+1) - 1
        t.push_back({i, i + 2, w});  // node (i+1) + 1
    }
    return SparseMatrix::from_triplets(n_interior, n_interior + 2, std::move(t));
}

/// Selects the n interior nodes out of all (n+2) nodes.
inline SparseMatrix interior_selection(index_t n_interior) {
    std::vector<Triplet> t;
    for (index_t i = 0; i < n_interior; ++i) t.push_back({i, i + 1, 1.0});
    return SparseMatrix::from_triplets(n_interior, n_interior + 2, std::move(t));
}

} // namespace grid
} // namespace splitkrylov

#endif
