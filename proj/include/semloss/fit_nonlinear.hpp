#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "semloss/errors.hpp"
#include "semloss/fit_config.hpp"
#include "semloss/fit_linear.hpp"
#include "semloss/fit_report.hpp"
#include "semloss/grid.hpp"
#include "semloss/metrics.hpp"
#include "semloss/model1d.hpp"
#include "semloss/rng.hpp"

namespace semloss {

// ============================================================================
// Damped Gauss-Newton (Levenberg-Marquardt) for Exp-1, Exp-2 and Sigmoid
//
// Classic Marquardt scaling: solve (J'J + lambda diag(J'J)) delta = J' r.
// A step that lowers SSE is accepted and lambda shrinks by 10; otherwise the
// step is discarded and lambda grows by 10 up to a ceiling of 1e12, at which
// point the start gives up.  Multi-start: one deterministic heuristic start
// plus seeded scale-aware jitters of it; best SSE wins, ties broken by the
// lower start index.
// ============================================================================

namespace detail {

constexpr double kLmInitialDamping = 1e-3;
constexpr double kLmDampingCeiling = 1e12;
constexpr double kLmDampingFloor = 1e-15;

/*! A data-driven initial guess per family. */
inline std::vector<double> heuristic_start(ModelFamily family, const Series1D& series) {
    const auto& x = series.x;
    const auto& y = series.y;
    const double y_min = *std::min_element(y.begin(), y.end());
    const double y_max = *std::max_element(y.begin(), y.end());

    switch (family) {
        case ModelFamily::exp1: {
            // If y has one sign throughout, fit ln|y| = ln|a| + b x linearly.
            const bool all_pos = std::all_of(y.begin(), y.end(), [](double v) { return v > 0; });
            const bool all_neg = std::all_of(y.begin(), y.end(), [](double v) { return v < 0; });
            if (all_pos || all_neg) {
                const double n = static_cast<double>(x.size());
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double ly = std::log(std::fabs(y[i]));
                    sx += x[i]; sy += ly; sxx += x[i] * x[i]; sxy += x[i] * ly;
                }
                const double denom = n * sxx - sx * sx;
                if (denom != 0.0) {
                    const double b = (n * sxy - sx * sy) / denom;
                    const double ln_a = (sy - b * sx) / n;
                    const double sign = all_pos ? 1.0 : -1.0;
                    return {sign * std::exp(ln_a), b};
                }
            }
            double mean = 0;
            for (double v : y) mean += v;
            return {mean / static_cast<double>(y.size()), 0.0};
        }
        case ModelFamily::exp2:
            // saturating level plus a decaying deficit
            return {y_max, 1e-5, -(y_max - y_min), -0.05};
        case ModelFamily::sigmoid: {
            // left plateau = first y, swing = last - first, centered transition
            const double span = x.back() - x.front();
            const double d = 4.0 / (span > 0 ? span : 1.0);
            const double x_mid = 0.5 * (x.front() + x.back());
            return {y.front(), y.back() - y.front(), d, -d * x_mid};
        }
        default:
            throw input_error(std::string("fit_nonlinear_1d: family '") + family_name(family) +
                              "' is linear; use fit_linear_1d");
    }
}

struct LmOutcome {
    std::vector<double> params;
    double sse = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::uint64_t, double>> trace;
    std::uint64_t iterations = 0;
    bool converged = false;
    bool usable = false;  //!< produced any finite SSE
};

inline double series_sse(ModelFamily family, const std::vector<double>& p,
                         const Series1D& series) {
    const Model1DParams mp = params_from_vector(family, p);
    double sse = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double r = series.y[i] - eval_model1d(mp, series.x[i]);
        sse += r * r;
    }
    return sse;
}

inline LmOutcome lm_single_start(ModelFamily family, const Series1D& series,
                                 std::vector<double> p, const FitConfig& config) {
    const auto n = static_cast<Eigen::Index>(series.size());
    const auto m = static_cast<Eigen::Index>(p.size());
    LmOutcome out;

    double sse;
    try {
        sse = series_sse(family, p, series);
    } catch (const eval_error&) {
        return out;  // start point itself not evaluable
    }
    if (!std::isfinite(sse)) return out;
    out.usable = true;
    out.trace.emplace_back(0, sse);

    double damping = kLmInitialDamping;
    for (std::uint64_t iter = 1; iter <= config.max_iterations; ++iter) {
        out.iterations = iter;
        Eigen::MatrixXd jac(n, m);
        Eigen::VectorXd resid(n);
        const Model1DParams mp = params_from_vector(family, p);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            resid[i] = series.y[idx] - eval_model1d(mp, series.x[idx]);
            const auto row = model1d_jacobian_row(mp, series.x[idx]);
            for (Eigen::Index j = 0; j < m; ++j) jac(i, j) = row[static_cast<std::size_t>(j)];
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * resid;

        bool stepped = false;
        while (damping <= kLmDampingCeiling) {
            Eigen::MatrixXd lhs = jtj;
            for (Eigen::Index j = 0; j < m; ++j)
                lhs(j, j) += damping * std::max(jtj(j, j), 1e-12);
            const Eigen::VectorXd delta = lhs.ldlt().solve(jtr);

            std::vector<double> trial = p;
            for (Eigen::Index j = 0; j < m; ++j) trial[static_cast<std::size_t>(j)] += delta[j];
            double trial_sse;
            try {
                trial_sse = series_sse(family, trial, series);
            } catch (const eval_error&) {
                trial_sse = std::numeric_limits<double>::infinity();
            }
            // non-strict acceptance: a zero-improvement step at an optimum
            // must register as convergence, not climb the damping ladder
            if (std::isfinite(trial_sse) && trial_sse <= sse) {
                const double improvement = sse - trial_sse;
                p = std::move(trial);
                sse = trial_sse;
                damping = std::max(damping / 10.0, kLmDampingFloor);
                out.trace.emplace_back(iter, sse);
                stepped = true;
                if (improvement <= config.rel_tolerance * std::max(sse, 1e-300))
                    out.converged = true;
                break;
            }
            damping *= 10.0;
        }
        if (!stepped || out.converged) break;  // damping ceiling hit, or done
    }
    out.params = std::move(p);
    out.sse = sse;
    return out;
}

} // namespace detail

/*! Multi-start damped Gauss-Newton fit of an exponential or sigmoid family.
 *  Start 0 is a data-driven heuristic; starts 1..n-1 jitter it with seeded
 *  uniform perturbations scaled to each coefficient's magnitude. */
inline FitReport fit_nonlinear_1d(ModelFamily family, const Series1D& series,
                                  const FitConfig& config) {
    validate_series(series);
    validate_config(config);
    const std::size_t n_params = param_count(family);
    if (series.size() < n_params)
        throw fit_error(std::string("fit_nonlinear_1d: ") + family_name(family) +
                        " needs at least " + std::to_string(n_params) + " points, got " +
                        std::to_string(series.size()));

    const std::vector<double> base = detail::heuristic_start(family, series);

    std::optional<detail::LmOutcome> best;
    for (std::size_t start = 0; start < config.n_starts; ++start) {
        std::vector<double> p = base;
        if (start > 0) {
            SeededRng rng(config.seed + start);
            for (double& v : p) v += rng.uniform(-1.0, 1.0) * std::max(1.0, std::fabs(v));
        }
        detail::LmOutcome outcome = detail::lm_single_start(family, series, std::move(p), config);
        if (!outcome.usable) continue;
        if (!best || outcome.sse < best->sse) best = std::move(outcome);
    }
    if (!best)
        throw fit_error(std::string("fit_nonlinear_1d: every start diverged for ") +
                        family_name(family) + " (damping ceiling reached)");

    FitReport report;
    report.params = params_from_vector(family, best->params);
    report.data_label = series.label;
    report.converged = best->converged;
    report.iterations_used = best->iterations;
    report.trace = std::move(best->trace);
    report.config_echo = config;

    std::vector<double> predicted(series.size());
    const auto& p1d = std::get<Model1DParams>(report.params);
    for (std::size_t i = 0; i < series.size(); ++i) {
        predicted[i] = eval_model1d(p1d, series.x[i]);
        report.residuals.push_back(series.y[i] - predicted[i]);
    }
    const FitMetrics m = metrics(predicted, series.y);
    report.sse = m.sse;
    report.mape = m.mape;
    report.r_squared = m.r_squared;
    return report;
}

/*! Dispatch to the linear or damped nonlinear path by family. */
inline FitReport fit_model1d(ModelFamily family, const Series1D& series,
                             const FitConfig& config) {
    switch (family) {
        case ModelFamily::poly2:
        case ModelFamily::poly3:
        case ModelFamily::log:
            return fit_linear_1d(family, series);
        default:
            return fit_nonlinear_1d(family, series, config);
    }
}

} // namespace semloss
