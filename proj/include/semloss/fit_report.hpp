#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semloss/fit_config.hpp"
#include "semloss/model1d.hpp"
#include "semloss/surface.hpp"

namespace semloss {

// ============================================================================
// Fit result carrier
// ============================================================================

/*! Everything a fit produces: parameters, metrics, residuals, a sampled SSE
 *  trace and an echo of the configuration that generated it.  Grid residuals
 *  are flattened s-major (all q at the first s level first). */
struct FitReport {
    std::variant<Model1DParams, SemanticLossParams> params;
    double sse = 0.0;
    double mape = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
    std::vector<std::pair<std::uint64_t, double>> trace;  //!< (iteration, SSE) samples
    std::uint64_t iterations_used = 0;
    bool converged = false;
    FitConfig config_echo;
    std::string data_label;
};

} // namespace semloss
