/// @file table.hpp
/// @brief Machine-readable result tables (CSV and JSON).
///
/// Cell values are preformatted strings so identical configs and seeds give
/// byte-identical files; time columns are the only nondeterministic cells.

#ifndef SPLITKRYLOV_BENCH_TABLE_HPP
#define SPLITKRYLOV_BENCH_TABLE_HPP

#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "../core/types.hpp"

namespace splitkrylov {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns.size())
            throw DimensionError("Table: row width does not match header");
        rows.push_back(std::move(cells));
    }
};

inline std::string format_real(real_t v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_count(long v) { return std::to_string(v); }

inline void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            out << row[c] << (c + 1 < row.size() ? "," : "\n");
}

inline void write_json(std::ostream& out, const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << "\n";
}

inline void write_table(const std::string& path, const Table& table, bool json) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open output '" + path + "'");
    if (json) write_json(out, table);
    else write_csv(out, table);
}

} // namespace splitkrylov

#endif
