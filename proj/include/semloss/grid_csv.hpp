#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "semloss/errors.hpp"
#include "semloss/grid.hpp"

namespace semloss {

// ============================================================================
// Grid CSV format
//
//   q\s,0.41,0.82,1.23,1.64        <- literal first cell "q\s", then s values
//   10,81.94,81.94,88.42,88.50     <- q value, then one accuracy per s level
//   20,83.92,86.75,92.91,93.72
//   ...
//
// UTF-8, comma separated, '.' decimal point, no thousands separators.
// Numbers are written with the shortest decimal form that round-trips the
// exact double, so load -> write -> load is value-identical.
// ============================================================================

namespace detail {

/*! Shortest decimal string that parses back to exactly the same double. */
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const char* begin = cell.c_str();
    const char* end = begin + cell.size();
    // tolerate surrounding spaces
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw input_error("csv: non-numeric cell '" + cell + "' at row " +
                          std::to_string(row) + ", column " + std::to_string(col));
    return value;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r')
        cells.back().pop_back();
    return cells;
}

} // namespace detail

/*! Parse an accuracy grid from the CSV format above.  Every malformation is
 *  reported with its row/column location. */
inline AccuracyGrid load_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw input_error("csv: '" + path + "' is empty");

    auto header = detail::split_csv_line(line);
    if (header.size() < 2)
        throw input_error("csv: header needs the q\\s cell plus at least one s value");
    {
        // strip BOM if present, then require the literal corner cell
        std::string corner = header[0];
        if (corner.size() >= 3 && (unsigned char)corner[0] == 0xEF &&
            (unsigned char)corner[1] == 0xBB && (unsigned char)corner[2] == 0xBF)
            corner = corner.substr(3);
        if (corner != "q\\s")
            throw input_error("csv: first header cell must be 'q\\s', got '" + corner + "'");
    }

    AccuracyGrid grid;
    grid.label = path;
    for (std::size_t j = 1; j < header.size(); ++j)
        grid.s_axis.push_back(detail::parse_cell(header[j], 0, j));

    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;  // ignore trailing blank lines
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw input_error("csv: ragged row " + std::to_string(row) + " (" +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()) + ")");
        grid.q_axis.push_back(detail::parse_cell(cells[0], row, 0));
        std::vector<double> acc;
        for (std::size_t j = 1; j < cells.size(); ++j)
            acc.push_back(detail::parse_cell(cells[j], row, j));
        grid.values.push_back(std::move(acc));
    }
    if (grid.q_axis.empty())
        throw input_error("csv: '" + path + "' has a header but no data rows");

    // CSV rows are per-q; storage is [s][q], so transpose.
    std::vector<std::vector<double>> by_s(grid.s_axis.size(),
                                          std::vector<double>(grid.q_axis.size()));
    for (std::size_t jq = 0; jq < grid.q_axis.size(); ++jq)
        for (std::size_t is = 0; is < grid.s_axis.size(); ++is)
            by_s[is][jq] = grid.values[jq][is];
    grid.values = std::move(by_s);

    validate_grid(grid);
    return grid;
}

/*! Serialize a grid to the CSV format (exact inverse of load_grid_csv up to
 *  shortest-round-trip number formatting). */
inline std::string grid_csv_string(const AccuracyGrid& grid) {
    std::ostringstream out;
    out << "q\\s";
    for (double s : grid.s_axis) out << ',' << detail::format_double(s);
    out << '\n';
    for (std::size_t jq = 0; jq < grid.n_q(); ++jq) {
        out << detail::format_double(grid.q_axis[jq]);
        for (std::size_t is = 0; is < grid.n_s(); ++is)
            out << ',' << detail::format_double(grid.values[is][jq]);
        out << '\n';
    }
    return out.str();
}

inline void write_grid_csv(const AccuracyGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw input_error("csv: cannot write '" + path + "'");
    out << grid_csv_string(grid);
    if (!out)
        throw input_error("csv: write to '" + path + "' failed");
}

} // namespace semloss
