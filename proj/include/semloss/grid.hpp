#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "semloss/errors.hpp"

namespace semloss {

// ============================================================================
// Core data carriers: the measured accuracy grid and 1-D series slices.
// Both types are immutable-by-convention after construction (validate() is
// called by every factory in this library) and safe to share across threads.
// ============================================================================

/*! A rectangular grid of task accuracies (percent) over a quality axis q and
 *  a SNR-ratio axis s.  values is indexed [s][q]: one row per s level, one
 *  column per q level. */
struct AccuracyGrid {
    std::vector<double> q_axis;               //!< strictly increasing, > 0
    std::vector<double> s_axis;               //!< strictly increasing, > 0
    std::vector<std::vector<double>> values;  //!< [s][q], percent in [0, 100]
    std::string label;                        //!< provenance text

    std::size_t n_q() const { return q_axis.size(); }
    std::size_t n_s() const { return s_axis.size(); }
    std::size_t n_cells() const { return n_q() * n_s(); }
};

/*! A 1-D data series (x strictly increasing, same-length y). */
struct Series1D {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;

    std::size_t size() const { return x.size(); }
};

namespace detail {

inline bool strictly_increasing_positive(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] <= 0.0) return false;
        if (i > 0 && v[i] <= v[i - 1]) return false;
    }
    return true;
}

} // namespace detail

/*! Validate all AccuracyGrid invariants; throws input_error with the first
 *  violation found, naming the offending row/column. */
inline void validate_grid(const AccuracyGrid& grid) {
    if (grid.q_axis.empty() || grid.s_axis.empty())
        throw input_error("grid: empty axis (need at least one q and one s level)");
    if (!detail::strictly_increasing_positive(grid.q_axis))
        throw input_error("grid: q axis must be finite, > 0, strictly increasing");
    if (!detail::strictly_increasing_positive(grid.s_axis))
        throw input_error("grid: s axis must be finite, > 0, strictly increasing");
    if (grid.values.size() != grid.n_s())
        throw input_error("grid: row count " + std::to_string(grid.values.size()) +
                          " does not match s-axis length " + std::to_string(grid.n_s()));
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        if (grid.values[i].size() != grid.n_q())
            throw input_error("grid: ragged row " + std::to_string(i) + " (length " +
                              std::to_string(grid.values[i].size()) + ", expected " +
                              std::to_string(grid.n_q()) + ")");
        for (std::size_t j = 0; j < grid.values[i].size(); ++j) {
            const double v = grid.values[i][j];
            if (!std::isfinite(v) || v < 0.0 || v > 100.0)
                throw input_error("grid: accuracy out of [0, 100] at row " +
                                  std::to_string(i) + ", column " + std::to_string(j));
        }
    }
}

/*! Validate Series1D invariants (lengths >= 2, equal; x strictly increasing;
 *  everything finite). */
inline void validate_series(const Series1D& series) {
    if (series.x.size() != series.y.size())
        throw input_error("series: x and y lengths differ (" +
                          std::to_string(series.x.size()) + " vs " +
                          std::to_string(series.y.size()) + ")");
    if (series.x.size() < 2)
        throw input_error("series: need at least 2 points");
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (!std::isfinite(series.x[i]) || !std::isfinite(series.y[i]))
            throw input_error("series: non-finite value at index " + std::to_string(i));
        if (i > 0 && series.x[i] <= series.x[i - 1])
            throw input_error("series: x must be strictly increasing (violated at index " +
                              std::to_string(i) + ")");
    }
}

/*! Extract the accuracy-vs-q slice at one s level as a Series1D.
 *  The label carries the s value for provenance. */
inline Series1D column_series(const AccuracyGrid& grid, std::size_t s_index) {
    if (s_index >= grid.n_s())
        throw input_error("column_series: s index " + std::to_string(s_index) +
                          " out of range (grid has " + std::to_string(grid.n_s()) +
                          " s levels)");
    Series1D out;
    out.x = grid.q_axis;
    out.y = grid.values[s_index];
    out.label = grid.label + " @ s=" + std::to_string(grid.s_axis[s_index]);
    validate_series(out);
    return out;
}

} // namespace semloss
