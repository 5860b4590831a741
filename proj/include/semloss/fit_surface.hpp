#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "semloss/errors.hpp"
#include "semloss/fit_config.hpp"
#include "semloss/fit_report.hpp"
#include "semloss/grid.hpp"
#include "semloss/metrics.hpp"
#include "semloss/rng.hpp"
#include "semloss/surface.hpp"

namespace semloss {

// ============================================================================
// Batch gradient descent for the 2-D accuracy surface
//
// Each iteration evaluates the surface on the full grid, forms the residual
// matrix, computes the analytic SSE gradients and steps every parameter
// group with its own learning rate.  Gradient accumulators are zeroed every
// iteration; the literal_accumulate flag preserves them across iterations
// instead (a study mode -- it diverges on real data and exists so the
// behavioral difference can be demonstrated, not used).
//
// The safeguard applies the six group updates (mu0, then mu1..mu5 across all
// terms) one group at a time: a group's step is kept only if the full-grid
// SSE does not increase, otherwise the step is undone and that group's rate
// is halved, never below 10^-3 of its default.  One gradient evaluation per
// iteration either way; the extra cost is the per-group SSE re-evaluation.
// This makes the per-iteration SSE trace non-increasing by construction.
//
// Stopping: the iteration budget, or the SSE change over a 100-iteration
// window falling below rel_tolerance relative to the current SSE.
// ============================================================================

namespace detail {

struct DescentOutcome {
    SemanticLossParams params;
    double sse = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::uint64_t, double>> trace;
    std::uint64_t iterations = 0;
    bool converged = false;
};

constexpr std::uint64_t kStopWindow = 100;     //!< iterations between stop checks
constexpr double kRateFloorFactor = 1e-3;      //!< safeguard rate floor vs default
constexpr std::size_t kTraceSamples = 200;     //!< target sampled trace length

inline void grid_mean_std(const AccuracyGrid& grid, double& mean, double& std_dev) {
    double sum = 0.0;
    for (const auto& row : grid.values)
        for (double v : row) sum += v;
    const double n = static_cast<double>(grid.n_cells());
    mean = sum / n;
    double var = 0.0;
    for (const auto& row : grid.values)
        for (double v : row) var += (v - mean) * (v - mean);
    std_dev = std::sqrt(var / n);
}

/*! Draw a starting point per the configured policy.  Randomized draws are
 *  grouped column-wise (all mu1 first, then all mu2, ...) from the given
 *  seed so a start is fully determined by (policy, grid, n_terms, seed). */
inline SemanticLossParams initial_params(const AccuracyGrid& grid, std::size_t n_terms,
                                         const FitConfig& config, std::uint64_t seed) {
    SemanticLossParams p;
    p.terms.resize(n_terms);
    switch (config.init_policy) {
        case InitPolicy::zeros:
            return p;
        case InitPolicy::warm_start: {
            if (!config.warm_params)
                throw input_error("fit: warm_start without warm_params");
            if (config.warm_params->n_terms() != n_terms)
                throw input_error("fit: warm_params has " +
                                  std::to_string(config.warm_params->n_terms()) +
                                  " terms, fit wants " + std::to_string(n_terms));
            return *config.warm_params;
        }
        case InitPolicy::data_scale_random: {
            double mean = 0.0, std_dev = 0.0;
            grid_mean_std(grid, mean, std_dev);
            SeededRng rng(seed);
            p.mu0 = mean;
            for (auto& t : p.terms) t.mu1 = rng.uniform(-1.0, 1.0) * std_dev;
            for (auto& t : p.terms) t.mu2 = rng.uniform(-1.0, 1.0) * std_dev;
            for (auto& t : p.terms) t.mu3 = rng.uniform(-5.0, 5.0);
            for (auto& t : p.terms) t.mu4 = rng.uniform(-5.0, 5.0);
            for (auto& t : p.terms) t.mu5 = rng.uniform(-0.05, 0.005);
            return p;
        }
    }
    throw input_error("fit: bad init policy");
}

inline double& term_field(SurfaceTerm& t, std::size_t group) {
    switch (group) {
        case 1: return t.mu1;
        case 2: return t.mu2;
        case 3: return t.mu3;
        case 4: return t.mu4;
        default: return t.mu5;
    }
}

inline double group_gradient(const SurfaceGradients& g, std::size_t group, std::size_t term) {
    return g.d_terms[term][group - 1];
}

inline bool params_finite(const SemanticLossParams& p) {
    if (!std::isfinite(p.mu0)) return false;
    for (const auto& t : p.terms)
        for (double v : {t.mu1, t.mu2, t.mu3, t.mu4, t.mu5})
            if (!std::isfinite(v)) return false;
    return true;
}

inline DescentOutcome run_descent(const AccuracyGrid& grid, SemanticLossParams params,
                                  const FitConfig& config) {
    DescentOutcome out;
    double sse;
    try {
        sse = surface_sse(params, grid);
    } catch (const eval_error& e) {
        throw fit_error(std::string("descent: starting point not evaluable: ") + e.what());
    }

    std::array<double, 6> rate = config.learning_rates;
    std::array<double, 6> rate_floor{};
    for (std::size_t i = 0; i < 6; ++i) rate_floor[i] = rate[i] * kRateFloorFactor;

    const std::uint64_t stride =
        std::max<std::uint64_t>(1, config.max_iterations / kTraceSamples);
    out.trace.emplace_back(0, sse);

    SurfaceGradients accumulated(params.n_terms());  // only used by literal_accumulate
    double window_sse = sse;

    for (std::uint64_t iter = 1; iter <= config.max_iterations; ++iter) {
        out.iterations = iter;
        SurfaceGradients grads;
        try {
            grads = semantic_loss_gradients(params, grid);
        } catch (const eval_error& e) {
            throw fit_error("descent: gradient overflow at iteration " + std::to_string(iter) +
                            ": " + e.what());
        }
        if (config.literal_accumulate) {
            accumulated.d_mu0 += grads.d_mu0;
            for (std::size_t k = 0; k < grads.d_terms.size(); ++k)
                for (std::size_t j = 0; j < 5; ++j)
                    accumulated.d_terms[k][j] += grads.d_terms[k][j];
            grads = accumulated;
        }

        if (config.safeguard) {
            // Group 0: mu0 alone; groups 1..5: that field across all terms.
            for (std::size_t group = 0; group < 6; ++group) {
                SemanticLossParams trial = params;
                if (group == 0) {
                    trial.mu0 -= rate[0] * grads.d_mu0;
                } else {
                    for (std::size_t k = 0; k < trial.terms.size(); ++k)
                        term_field(trial.terms[k], group) -= rate[group] * group_gradient(grads, group, k);
                }
                double trial_sse = std::numeric_limits<double>::infinity();
                try {
                    trial_sse = surface_sse(trial, grid);
                } catch (const eval_error&) {
                    // overflow on a trial step is just a rejected step
                }
                if (std::isfinite(trial_sse) && trial_sse <= sse) {
                    params = std::move(trial);
                    sse = trial_sse;
                } else {
                    rate[group] = std::max(rate[group] / 2.0, rate_floor[group]);
                }
            }
        } else {
            params.mu0 -= rate[0] * grads.d_mu0;
            for (std::size_t k = 0; k < params.terms.size(); ++k)
                for (std::size_t group = 1; group < 6; ++group)
                    term_field(params.terms[k], group) -= rate[group] * group_gradient(grads, group, k);
            if (!params_finite(params))
                throw fit_error("descent: non-finite parameter at iteration " +
                                std::to_string(iter));
            try {
                sse = surface_sse(params, grid);
            } catch (const eval_error& e) {
                throw fit_error("descent: evaluation overflow at iteration " +
                                std::to_string(iter) + ": " + e.what());
            }
            if (!std::isfinite(sse))
                throw fit_error("descent: non-finite SSE at iteration " + std::to_string(iter));
        }

        if (iter % stride == 0) out.trace.emplace_back(iter, sse);

        if (iter % kStopWindow == 0) {
            if (std::fabs(window_sse - sse) <= config.rel_tolerance * sse) {
                out.converged = true;
                break;
            }
            window_sse = sse;
        }
    }
    if (out.trace.back().first != out.iterations) out.trace.emplace_back(out.iterations, sse);
    out.params = std::move(params);
    out.sse = sse;
    return out;
}

inline FitReport report_from_outcome(DescentOutcome&& outcome, const AccuracyGrid& grid,
                                     const FitConfig& config) {
    FitReport report;
    report.iterations_used = outcome.iterations;
    report.converged = outcome.converged;
    report.trace = std::move(outcome.trace);
    report.config_echo = config;
    report.data_label = grid.label;

    std::vector<double> predicted, actual;
    predicted.reserve(grid.n_cells());
    actual.reserve(grid.n_cells());
    for (std::size_t i = 0; i < grid.n_s(); ++i)
        for (std::size_t j = 0; j < grid.n_q(); ++j) {
            predicted.push_back(
                eval_semantic_loss(outcome.params, grid.q_axis[j], grid.s_axis[i]));
            actual.push_back(grid.values[i][j]);
            report.residuals.push_back(actual.back() - predicted.back());
        }
    const FitMetrics m = metrics(predicted, actual);
    report.sse = m.sse;
    report.mape = m.mape;
    report.r_squared = m.r_squared;
    report.params = std::move(outcome.params);
    return report;
}

} // namespace detail

/*! Fit the surface to a grid with batch gradient descent.
 *
 *  Randomized initialization runs n_starts descents (start k drawing from
 *  seed + k) and keeps the best final SSE, ties to the lower start index;
 *  warm_start and zeros are deterministic single starts. */
inline FitReport fit_semantic_loss(const AccuracyGrid& grid, std::size_t n_terms,
                                   const FitConfig& config) {
    validate_grid(grid);
    validate_config(config);
    if (n_terms < 1)
        throw input_error("fit_semantic_loss: need at least one term");

    const std::size_t starts =
        (config.init_policy == InitPolicy::data_scale_random) ? config.n_starts : 1;

    std::optional<detail::DescentOutcome> best;
    for (std::size_t k = 0; k < starts; ++k) {
        SemanticLossParams start_params =
            detail::initial_params(grid, n_terms, config, config.seed + k);
        detail::DescentOutcome outcome =
            detail::run_descent(grid, std::move(start_params), config);
        if (!best || outcome.sse < best->sse) best = std::move(outcome);
    }
    return detail::report_from_outcome(std::move(*best), grid, config);
}

/*! One sweep entry: either a report or the error that prevented it. */
struct SweepEntry {
    std::size_t n_terms = 0;
    std::optional<FitReport> report;
    std::string error;  //!< empty when report is present

    bool ok() const { return report.has_value(); }
};

/*! Fit a whole range of term counts.
 *
 *  Beyond the randomized starts, every entry after the first also descends
 *  from the previous optimum padded with an all-zero extra term.  The padded
 *  start evaluates to exactly the previous surface, so its starting SSE
 *  equals the smaller model's final SSE and safeguarded descent can only
 *  improve it: final SSE is non-increasing across the sweep by construction.
 *  A failed entry is recorded and the sweep continues. */
inline std::vector<SweepEntry> nc_sweep(const AccuracyGrid& grid,
                                        const std::vector<std::size_t>& nc_range,
                                        const FitConfig& config) {
    validate_grid(grid);
    validate_config(config);
    if (nc_range.empty())
        throw input_error("nc_sweep: empty term-count range");
    for (std::size_t i = 0; i < nc_range.size(); ++i) {
        if (nc_range[i] < 1)
            throw input_error("nc_sweep: term counts must be >= 1");
        if (i > 0 && nc_range[i] <= nc_range[i - 1])
            throw input_error("nc_sweep: term counts must be strictly ascending");
    }

    std::vector<SweepEntry> entries;
    std::optional<SemanticLossParams> previous_best;

    for (std::size_t nc : nc_range) {
        SweepEntry entry;
        entry.n_terms = nc;
        try {
            FitReport best = fit_semantic_loss(grid, nc, config);
            if (previous_best && previous_best->n_terms() < nc) {
                SemanticLossParams padded = *previous_best;
                padded.terms.resize(nc);  // new terms are value-initialized to zero
                FitConfig warm = config;
                warm.init_policy = InitPolicy::warm_start;
                warm.warm_params = std::move(padded);
                FitReport warmed = fit_semantic_loss(grid, nc, warm);
                if (warmed.sse < best.sse) best = std::move(warmed);
            }
            entry.report = std::move(best);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
        if (entries.back().ok())
            previous_best = std::get<SemanticLossParams>(entries.back().report->params);
    }
    return entries;
}

} // namespace semloss
