/// @file matrix_market.hpp
/// @brief Matrix Market coordinate-format reader/writer.
///
/// Supported header: "%%MatrixMarket matrix coordinate real general|symmetric".
/// Indices are 1-based on disk, 0-based in memory. Duplicate entries are
/// summed; symmetric storage is expanded to full general storage on read.

#ifndef SPLITKRYLOV_CORE_MATRIX_MARKET_HPP
#define SPLITKRYLOV_CORE_MATRIX_MARKET_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sparse_matrix.hpp"
#include "types.hpp"

namespace splitkrylov {

namespace detail {
inline std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}
} // namespace detail

inline SparseMatrix mm_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("mm_read: cannot open '" + path + "'");
    std::string line;
    long line_no = 0;

    auto fail = [&](const std::string& what) {
        throw FormatError("mm_read: " + path + ":" + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(in, line)) fail("empty file");
    ++line_no;
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") fail("missing %%MatrixMarket banner");
    if (detail::lower(object) != "matrix" || detail::lower(format) != "coordinate")
        fail("only 'matrix coordinate' files are supported");
    field = detail::lower(field);
    symmetry = detail::lower(symmetry);
    if (field != "real") fail("unsupported field '" + field + "' (only real)");
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        fail("unsupported symmetry '" + symmetry + "' (only general or symmetric)");

    index_t rows = 0, cols = 0;
    long declared_nnz = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream sizes(line);
        if (!(sizes >> rows >> cols >> declared_nnz)) fail("malformed size line");
        break;
    }
    if (declared_nnz < 0) fail("missing size line");

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(declared_nnz) * (symmetric ? 2 : 1));
    long read_nnz = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream entry(line);
        index_t i = 0, j = 0;
        real_t v = 0.0;
        if (!(entry >> i >> j >> v)) fail("malformed entry");
        if (i < 1 || i > rows || j < 1 || j > cols) fail("entry index out of range");
        entries.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
        ++read_nnz;
    }
    if (read_nnz != declared_nnz)
        throw FormatError("mm_read: " + path + ": expected " + std::to_string(declared_nnz) +
                          " entries, found " + std::to_string(read_nnz));
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

inline void mm_write(const std::string& path, const SparseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw FormatError("mm_write: cannot open '" + path + "'");
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows << " " << a.n_cols << " " << a.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < a.n_rows; ++i)
        for (index_t k = a.row_begin(i); k < a.row_end(i); ++k) {
            // %.17g round-trips IEEE doubles exactly
            std::snprintf(buf, sizeof(buf), "%.17g", a.values[static_cast<std::size_t>(k)]);
            out << (i + 1) << " " << (a.col_indices[static_cast<std::size_t>(k)] + 1) << " " << buf
                << "\n";
        }
    if (!out) throw FormatError("mm_write: write failed for '" + path + "'");
}

} // namespace splitkrylov

#endif
