/// @file sparse_matrix.hpp
/// @brief Compressed-row sparse matrix storage and arithmetic.
///
/// Invariants: row_offsets is non-decreasing with row_offsets[n_rows] = nnz,
/// column indices are strictly increasing within each row, duplicates are
/// forbidden. Explicitly stored zeros are allowed (and kept by arithmetic, so
/// symmetric/skew parts share the symmetrized pattern of their source).

#ifndef SPLITKRYLOV_CORE_SPARSE_MATRIX_HPP
#define SPLITKRYLOV_CORE_SPARSE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "types.hpp"
#include "vector_ops.hpp"

namespace splitkrylov {

struct Triplet {
    index_t row;
    index_t col;
    real_t value;
};

struct SparseMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<index_t> row_offsets;   // size n_rows + 1
    std::vector<index_t> col_indices;   // size nnz
    std::vector<real_t> values;         // size nnz

    SparseMatrix() : row_offsets(1, 0) {}
    SparseMatrix(index_t rows, index_t cols)
        : n_rows(rows), n_cols(cols), row_offsets(static_cast<std::size_t>(rows) + 1, 0) {}

    index_t nnz() const { return static_cast<index_t>(values.size()); }
    bool is_square() const { return n_rows == n_cols; }

    index_t row_begin(index_t i) const { return row_offsets[static_cast<std::size_t>(i)]; }
    index_t row_end(index_t i) const { return row_offsets[static_cast<std::size_t>(i) + 1]; }

    /// Stored value at (i, j), 0 if the position is not in the pattern.
    real_t value_at(index_t i, index_t j) const {
        const auto* first = col_indices.data() + row_begin(i);
        const auto* last = col_indices.data() + row_end(i);
        const auto* it = std::lower_bound(first, last, j);
        if (it != last && *it == j) return values[static_cast<std::size_t>(it - col_indices.data())];
        return 0.0;
    }

    real_t frobenius_norm() const {
        real_t s = 0.0;
        for (real_t v : values) s += v * v;
        return std::sqrt(s);
    }

    /// Builds a CSR matrix from (row, col, value) entries. Duplicates are
    /// summed, matching coordinate-format conventions.
    static SparseMatrix from_triplets(index_t rows, index_t cols, std::vector<Triplet> entries) {
        for (const auto& t : entries) {
            if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
                throw DimensionError("triplet index out of range");
        }
        std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        SparseMatrix m(rows, cols);
        m.col_indices.reserve(entries.size());
        m.values.reserve(entries.size());
        for (std::size_t k = 0; k < entries.size();) {
            std::size_t j = k;
            real_t sum = 0.0;
            while (j < entries.size() && entries[j].row == entries[k].row &&
                   entries[j].col == entries[k].col) {
                sum += entries[j].value;
                ++j;
            }
            m.col_indices.push_back(entries[k].col);
            m.values.push_back(sum);
            m.row_offsets[static_cast<std::size_t>(entries[k].row) + 1] =
                static_cast<index_t>(m.values.size());
            k = j;
        }
        for (std::size_t i = 1; i < m.row_offsets.size(); ++i)
            m.row_offsets[i] = std::max(m.row_offsets[i], m.row_offsets[i - 1]);
        return m;
    }

    static SparseMatrix identity(index_t n, real_t scale_factor = 1.0) {
        SparseMatrix m(n, n);
        m.col_indices.resize(static_cast<std::size_t>(n));
        m.values.assign(static_cast<std::size_t>(n), scale_factor);
        for (index_t i = 0; i < n; ++i) {
            m.col_indices[static_cast<std::size_t>(i)] = i;
            m.row_offsets[static_cast<std::size_t>(i) + 1] = i + 1;
        }
        return m;
    }

    static SparseMatrix diagonal(const Vector& d) {
        SparseMatrix m = identity(static_cast<index_t>(d.size()));
        m.values = d;
        return m;
    }

    /// Checks the storage invariants, throwing on violation.
    void validate() const {
        if (row_offsets.size() != static_cast<std::size_t>(n_rows) + 1)
            throw StructureError("row_offsets has wrong length");
        if (row_offsets.front() != 0 || row_offsets.back() != nnz())
            throw StructureError("row_offsets endpoints inconsistent with nnz");
        for (index_t i = 0; i < n_rows; ++i) {
            if (row_end(i) < row_begin(i)) throw StructureError("row_offsets not non-decreasing");
            for (index_t k = row_begin(i); k < row_end(i); ++k) {
                index_t c = col_indices[static_cast<std::size_t>(k)];
                if (c < 0 || c >= n_cols) throw StructureError("column index out of range");
                if (k > row_begin(i) && c <= col_indices[static_cast<std::size_t>(k) - 1])
                    throw StructureError("column indices not strictly increasing within row");
            }
        }
    }
};

/// y = A x
inline void spmv(const SparseMatrix& a, const Vector& x, Vector& y) {
    if (static_cast<index_t>(x.size()) != a.n_cols)
        throw DimensionError("spmv: x has length " + std::to_string(x.size()) +
                             ", expected " + std::to_string(a.n_cols));
    y.assign(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        real_t s = 0.0;
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
            s += a.values[static_cast<std::size_t>(k)] *
                 x[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = s;
    }
}

inline Vector spmv(const SparseMatrix& a, const Vector& x) {
    Vector y;
    spmv(a, x, y);
    return y;
}

/// y = A^T x
inline void spmv_transpose(const SparseMatrix& a, const Vector& x, Vector& y) {
    if (static_cast<index_t>(x.size()) != a.n_rows)
        throw DimensionError("spmv_transpose: dimension mismatch");
    y.assign(static_cast<std::size_t>(a.n_cols), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        const real_t xi = x[static_cast<std::size_t>(i)];
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
            y[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])] +=
                a.values[static_cast<std::size_t>(k)] * xi;
    }
}

inline Vector spmv_transpose(const SparseMatrix& a, const Vector& x) {
    Vector y;
    spmv_transpose(a, x, y);
    return y;
}

inline SparseMatrix transpose(const SparseMatrix& a) {
    SparseMatrix t(a.n_cols, a.n_rows);
    std::vector<index_t> counts(static_cast<std::size_t>(a.n_cols) + 1, 0);
    for (index_t c : a.col_indices) ++counts[static_cast<std::size_t>(c) + 1];
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    t.row_offsets = counts;
    t.col_indices.resize(a.values.size());
    t.values.resize(a.values.size());
    std::vector<index_t> next(counts.begin(), counts.end() - 1);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
            index_t c = a.col_indices[static_cast<std::size_t>(k)];
            index_t pos = next[static_cast<std::size_t>(c)]++;
            t.col_indices[static_cast<std::size_t>(pos)] = i;
            t.values[static_cast<std::size_t>(pos)] = a.values[static_cast<std::size_t>(k)];
        }
    }
    return t;
}

/// alpha*A + beta*B on the union pattern. Entries that cancel numerically are
/// kept as explicit zeros so callers control the pattern.
inline SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, real_t alpha = 1.0,
                        real_t beta = 1.0) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
        throw DimensionError("add: shape mismatch");
    SparseMatrix c(a.n_rows, a.n_cols);
    c.col_indices.reserve(a.values.size() + b.values.size());
    c.values.reserve(a.values.size() + b.values.size());
    for (index_t i = 0; i < a.n_rows; ++i) {
        index_t ka = a.row_begin(i), kb = b.row_begin(i);
        const index_t ea = a.row_end(i), eb = b.row_end(i);
        while (ka < ea || kb < eb) {
            index_t ca = ka < ea ? a.col_indices[static_cast<std::size_t>(ka)] : a.n_cols;
            index_t cb = kb < eb ? b.col_indices[static_cast<std::size_t>(kb)] : a.n_cols;
            if (ca < cb) {
                c.col_indices.push_back(ca);
                c.values.push_back(alpha * a.values[static_cast<std::size_t>(ka++)]);
            } else if (cb < ca) {
                c.col_indices.push_back(cb);
                c.values.push_back(beta * b.values[static_cast<std::size_t>(kb++)]);
            } else {
                c.col_indices.push_back(ca);
                c.values.push_back(alpha * a.values[static_cast<std::size_t>(ka++)] +
                                   beta * b.values[static_cast<std::size_t>(kb++)]);
            }
        }
        c.row_offsets[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.values.size());
    }
    return c;
}

inline SparseMatrix scale(const SparseMatrix& a, real_t alpha) {
    SparseMatrix c = a;
    for (auto& v : c.values) v *= alpha;
    return c;
}

/// C = A B (classical row-by-row sparse product).
inline SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.n_cols != b.n_rows) throw DimensionError("matmul: inner dimensions differ");
    SparseMatrix c(a.n_rows, b.n_cols);
    std::vector<real_t> acc(static_cast<std::size_t>(b.n_cols), 0.0);
    std::vector<index_t> marker(static_cast<std::size_t>(b.n_cols), -1);
    std::vector<index_t> cols_in_row;
    for (index_t i = 0; i < a.n_rows; ++i) {
        cols_in_row.clear();
        for (index_t ka = a.row_begin(i); ka < a.row_end(i); ++ka) {
            const index_t j = a.col_indices[static_cast<std::size_t>(ka)];
            const real_t av = a.values[static_cast<std::size_t>(ka)];
            for (index_t kb = b.row_begin(j); kb < b.row_end(j); ++kb) {
                const index_t col = b.col_indices[static_cast<std::size_t>(kb)];
                if (marker[static_cast<std::size_t>(col)] != i) {
                    marker[static_cast<std::size_t>(col)] = i;
                    acc[static_cast<std::size_t>(col)] = 0.0;
                    cols_in_row.push_back(col);
                }
                acc[static_cast<std::size_t>(col)] += av * b.values[static_cast<std::size_t>(kb)];
            }
        }
        std::sort(cols_in_row.begin(), cols_in_row.end());
        for (index_t col : cols_in_row) {
            c.col_indices.push_back(col);
            c.values.push_back(acc[static_cast<std::size_t>(col)]);
        }
        c.row_offsets[static_cast<std::size_t>(i) + 1] = static_cast<index_t>(c.values.size());
    }
    return c;
}

/// Kronecker product A (x) B.
inline SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(a.nnz()) * static_cast<std::size_t>(b.nnz()));
    for (index_t ia = 0; ia < a.n_rows; ++ia)
        for (index_t ka = a.row_begin(ia); ka < a.row_end(ia); ++ka) {
            const index_t ja = a.col_indices[static_cast<std::size_t>(ka)];
            const real_t va = a.values[static_cast<std::size_t>(ka)];
            for (index_t ib = 0; ib < b.n_rows; ++ib)
                for (index_t kb = b.row_begin(ib); kb < b.row_end(ib); ++kb) {
                    t.push_back({ia * b.n_rows + ib,
                                 ja * b.n_cols + b.col_indices[static_cast<std::size_t>(kb)],
                                 va * b.values[static_cast<std::size_t>(kb)]});
                }
        }
    return SparseMatrix::from_triplets(a.n_rows * b.n_rows, a.n_cols * b.n_cols, std::move(t));
}

/// Dense row-major copy (small matrices; used by oracles and coarse solvers).
inline std::vector<real_t> to_dense(const SparseMatrix& a) {
    std::vector<real_t> d(static_cast<std::size_t>(a.n_rows) * static_cast<std::size_t>(a.n_cols),
                          0.0);
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k)
            d[static_cast<std::size_t>(i) * static_cast<std::size_t>(a.n_cols) +
              static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])] =
                a.values[static_cast<std::size_t>(k)];
    return d;
}

/// Assembles a block matrix from (block_row, block_col, matrix, scale) parts.
inline SparseMatrix block_matrix(const std::vector<index_t>& row_sizes,
                                 const std::vector<index_t>& col_sizes,
                                 const std::vector<std::tuple<int, int, const SparseMatrix*, real_t>>& blocks) {
    std::vector<index_t> row_off(row_sizes.size() + 1, 0), col_off(col_sizes.size() + 1, 0);
    for (std::size_t i = 0; i < row_sizes.size(); ++i) row_off[i + 1] = row_off[i] + row_sizes[i];
    for (std::size_t j = 0; j < col_sizes.size(); ++j) col_off[j + 1] = col_off[j] + col_sizes[j];
    std::vector<Triplet> t;
    for (const auto& [bi, bj, m, s] : blocks) {
        if (m->n_rows != row_sizes[static_cast<std::size_t>(bi)] ||
            m->n_cols != col_sizes[static_cast<std::size_t>(bj)])
            throw DimensionError("block_matrix: block shape mismatch");
        for (index_t i = 0; i < m->n_rows; ++i)
            for (index_t k = m->row_begin(i); k < m->row_end(i); ++k)
                t.push_back({row_off[static_cast<std::size_t>(bi)] + i,
                             col_off[static_cast<std::size_t>(bj)] +
                                 m->col_indices[static_cast<std::size_t>(k)],
                             s * m->values[static_cast<std::size_t>(k)]});
    }
    return SparseMatrix::from_triplets(row_off.back(), col_off.back(), std::move(t));
}

} // namespace splitkrylov

#endif
