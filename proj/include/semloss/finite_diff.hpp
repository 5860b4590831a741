#pragma once

#include <cmath>
#include <string>

#include "semloss/errors.hpp"
#include "semloss/grid.hpp"
#include "semloss/surface.hpp"

namespace semloss {

// ============================================================================
// Finite-difference gradient oracle
//
// Central differences of SSE per parameter, with a per-parameter step of
// step * max(1, |value|).  This is the independent check the analytic
// gradients are verified against; it deliberately shares no code with them
// beyond the forward evaluation.
// ============================================================================

namespace detail {

template <typename Mutator>
inline double central_difference(SemanticLossParams params, const AccuracyGrid& grid,
                                 double h, Mutator&& set) {
    set(params, +h);
    const double up = surface_sse(params, grid);
    set(params, -2.0 * h);  // params currently at +h; move to -h
    const double down = surface_sse(params, grid);
    if (!std::isfinite(up) || !std::isfinite(down))
        throw eval_error("finite difference: non-finite SSE at perturbed point");
    return (up - down) / (2.0 * h);
}

} // namespace detail

/*! Central-difference SSE gradients, same shape as semantic_loss_gradients. */
inline SurfaceGradients finite_diff_gradient(const SemanticLossParams& params,
                                             const AccuracyGrid& grid, double step) {
    if (!(step > 0.0))
        throw input_error("finite_diff_gradient: step must be > 0");
    SurfaceGradients g(params.n_terms());

    auto h_for = [step](double value) { return step * std::max(1.0, std::fabs(value)); };

    g.d_mu0 = detail::central_difference(
        params, grid, h_for(params.mu0),
        [](SemanticLossParams& p, double d) { p.mu0 += d; });

    for (std::size_t k = 0; k < params.n_terms(); ++k) {
        const auto& t = params.terms[k];
        const double* fields[5] = {&t.mu1, &t.mu2, &t.mu3, &t.mu4, &t.mu5};
        for (std::size_t j = 0; j < 5; ++j) {
            g.d_terms[k][j] = detail::central_difference(
                params, grid, h_for(*fields[j]), [k, j](SemanticLossParams& p, double d) {
                    double* slot[5] = {&p.terms[k].mu1, &p.terms[k].mu2, &p.terms[k].mu3,
                                       &p.terms[k].mu4, &p.terms[k].mu5};
                    *slot[j] += d;
                });
        }
    }
    return g;
}

/*! Worst relative disagreement between two gradient structures, with a unit
 *  floor in the denominator so near-zero components compare absolutely. */
struct GradientComparison {
    double max_rel_error = 0.0;
    std::string worst_component = "none";
};

inline GradientComparison compare_gradients(const SurfaceGradients& a,
                                            const SurfaceGradients& b) {
    GradientComparison cmp;
    auto consider = [&cmp](double x, double y, const std::string& name) {
        const double denom = std::max({1.0, std::fabs(x), std::fabs(y)});
        const double rel = std::fabs(x - y) / denom;
        if (rel > cmp.max_rel_error) {
            cmp.max_rel_error = rel;
            cmp.worst_component = name;
        }
    };
    consider(a.d_mu0, b.d_mu0, "mu0");
    const std::size_t n = std::min(a.d_terms.size(), b.d_terms.size());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < 5; ++j)
            consider(a.d_terms[k][j], b.d_terms[k][j],
                     "mu" + std::to_string(j + 1) + "[term " + std::to_string(k + 1) + "]");
    return cmp;
}

} // namespace semloss
