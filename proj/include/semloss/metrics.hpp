#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "semloss/errors.hpp"

namespace semloss {

// ============================================================================
// Goodness-of-fit metrics
// ============================================================================

struct FitMetrics {
    double sse = 0.0;        //!< sum of squared errors
    double mape = 0.0;       //!< mean absolute percentage error, in percent
    double r_squared = 0.0;  //!< 1 - SSE / total sum of squares
};

/*! SSE, MAPE (percent) and R^2 of predictions against actuals.
 *
 *  MAPE requires every actual value to be nonzero.  When the actuals are all
 *  identical the total sum of squares vanishes and R^2 is conventionally 1
 *  for an exact fit and 0 otherwise. */
inline FitMetrics metrics(const std::vector<double>& predicted,
                          const std::vector<double>& actual) {
    if (predicted.size() != actual.size())
        throw input_error("metrics: length mismatch (" + std::to_string(predicted.size()) +
                          " predictions vs " + std::to_string(actual.size()) + " actuals)");
    if (predicted.empty())
        throw input_error("metrics: empty input");

    double mean = 0.0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());

    FitMetrics m;
    double ss_total = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0)
            throw input_error("metrics: actual value at index " + std::to_string(i) +
                              " is zero; MAPE is undefined");
        const double err = actual[i] - predicted[i];
        m.sse += err * err;
        m.mape += std::fabs(err) / std::fabs(actual[i]);
        const double dev = actual[i] - mean;
        ss_total += dev * dev;
    }
    m.mape *= 100.0 / static_cast<double>(actual.size());
    if (ss_total > 0.0)
        m.r_squared = 1.0 - m.sse / ss_total;
    else
        m.r_squared = (m.sse == 0.0) ? 1.0 : 0.0;
    return m;
}

} // namespace semloss
