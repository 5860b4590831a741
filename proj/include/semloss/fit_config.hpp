#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "semloss/errors.hpp"
#include "semloss/surface.hpp"

namespace semloss {

// ============================================================================
// Fit configuration
// ============================================================================

/*! How descent starting points are generated. */
enum class InitPolicy {
    data_scale_random,  //!< mu0 = mean(Y); mu1, mu2 ~ U(-1,1)*std(Y); mu3, mu4 ~ U(-5,5); mu5 ~ U(-0.05, 0.005)
    warm_start,         //!< start from caller-supplied parameters
    zeros,              //!< everything 0
};

inline const char* init_policy_name(InitPolicy p) {
    switch (p) {
        case InitPolicy::data_scale_random: return "data_scale_random";
        case InitPolicy::warm_start: return "warm_start";
        case InitPolicy::zeros: return "zeros";
    }
    return "?";
}

/*! Knobs shared by the descent and nonlinear-least-squares paths.
 *
 *  learning_rates index 0 steps mu0; indices 1..5 step the per-term groups
 *  mu1..mu5.  With safeguard on, a step that increases SSE is rejected and
 *  that group's rate is halved, never below 10^-3 of its default. */
struct FitConfig {
    std::array<double, 6> learning_rates{1e-3, 1e-3, 1e-3, 1e-4, 1e-4, 1e-11};
    std::uint64_t max_iterations = 200000;
    double rel_tolerance = 1e-12;  //!< relative SSE-change stop threshold
    std::uint64_t seed = 0;
    InitPolicy init_policy = InitPolicy::data_scale_random;
    std::optional<SemanticLossParams> warm_params;  //!< required by warm_start
    bool safeguard = true;
    std::size_t n_starts = 8;          //!< multi-start count for randomized inits
    bool literal_accumulate = false;   //!< keep gradient accumulators across iterations
};

inline void validate_config(const FitConfig& c) {
    for (double lr : c.learning_rates)
        if (!(lr > 0.0))
            throw input_error("config: learning rates must be > 0");
    if (c.max_iterations < 1)
        throw input_error("config: max_iterations must be >= 1");
    if (!(c.rel_tolerance >= 0.0))
        throw input_error("config: rel_tolerance must be >= 0");
    if (c.n_starts < 1)
        throw input_error("config: need at least one start");
    if (c.init_policy == InitPolicy::warm_start && !c.warm_params)
        throw input_error("config: warm_start requires warm_params");
}

} // namespace semloss
