#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "semloss/errors.hpp"
#include "semloss/grid.hpp"
#include "semloss/model1d.hpp"

namespace semloss {

// ============================================================================
// The 2-D accuracy surface
//
//   xi_acc(q, s) = mu0 + sum_{i=1..Nc} (mu1_i + mu2_i * sigma_i(s)) * exp(mu5_i q)
//   sigma_i(s)   = 1 / (1 + exp(-mu3_i s - mu4_i))
//
// Each term couples a shifted sigmoid in s with an exponential in q.  The
// exp(mu5 q) factor can grow without bound and is overflow-guarded; the
// sigmoid saturates in [0, 1] and never faults.
// ============================================================================

/*! One additive term of the surface: (mu1, mu2, mu3, mu4, mu5). */
struct SurfaceTerm {
    double mu1 = 0.0;  //!< exp-term base weight
    double mu2 = 0.0;  //!< sigmoid-gated weight
    double mu3 = 0.0;  //!< sigmoid slope in s
    double mu4 = 0.0;  //!< sigmoid shift
    double mu5 = 0.0;  //!< exponent rate in q
};

/*! Full parameter set: constant mu0 plus Nc terms. */
struct SemanticLossParams {
    double mu0 = 0.0;
    std::vector<SurfaceTerm> terms;

    std::size_t n_terms() const { return terms.size(); }
};

/*! Per-point intermediates shared by evaluation and the analytic gradients. */
struct GradientTerms {
    double sigma = 0.0;     //!< sigma_k at this s, strictly in (0, 1)
    double beta = 0.0;      //!< exp(mu5_k q), > 0
    double residual = 0.0;  //!< eps = y - xi_acc at this grid point
};

/*! Gradients of SSE with respect to every parameter. */
struct SurfaceGradients {
    double d_mu0 = 0.0;
    std::vector<std::array<double, 5>> d_terms;  //!< per term: d/d(mu1..mu5)

    explicit SurfaceGradients(std::size_t n_terms = 0)
        : d_terms(n_terms, std::array<double, 5>{0, 0, 0, 0, 0}) {}
};

inline void validate_surface_params(const SemanticLossParams& p) {
    if (!std::isfinite(p.mu0))
        throw input_error("surface params: mu0 is not finite");
    for (std::size_t k = 0; k < p.terms.size(); ++k) {
        const auto& t = p.terms[k];
        for (double v : {t.mu1, t.mu2, t.mu3, t.mu4, t.mu5})
            if (!std::isfinite(v))
                throw input_error("surface params: non-finite entry in term " +
                                  std::to_string(k + 1));
    }
}

namespace detail {

inline double term_beta(const SurfaceTerm& t, double q, std::size_t k) {
    const double arg = t.mu5 * q;
    if (arg > kExpArgLimit)
        throw eval_error("surface term " + std::to_string(k + 1) +
                         ": exponent mu5*q = " + std::to_string(arg) + " exceeds " +
                         std::to_string(kExpArgLimit));
    return std::exp(arg);
}

inline double term_sigma(const SurfaceTerm& t, double s) {
    return logistic(t.mu3 * s + t.mu4);
}

} // namespace detail

/*! Evaluate xi_acc(q, s). */
inline double eval_semantic_loss(const SemanticLossParams& params, double q, double s) {
    if (!std::isfinite(q) || !std::isfinite(s))
        throw input_error("eval_semantic_loss: q and s must be finite");
    double xi = params.mu0;
    for (std::size_t k = 0; k < params.terms.size(); ++k) {
        const auto& t = params.terms[k];
        const double sigma = detail::term_sigma(t, s);
        const double beta = detail::term_beta(t, q, k);
        assert(sigma >= 0.0 && sigma <= 1.0);
        assert(beta > 0.0 || t.mu5 * q < 0.0);  // beta underflows to 0 only for deep-negative exponents
        xi += (t.mu1 + t.mu2 * sigma) * beta;
    }
    return xi;
}

/*! Evaluate the surface over a whole grid; result indexed [s][q] like the grid. */
inline std::vector<std::vector<double>> eval_surface_grid(const SemanticLossParams& params,
                                                          const AccuracyGrid& grid) {
    std::vector<std::vector<double>> out(grid.n_s(), std::vector<double>(grid.n_q()));
    for (std::size_t i = 0; i < grid.n_s(); ++i)
        for (std::size_t j = 0; j < grid.n_q(); ++j)
            out[i][j] = eval_semantic_loss(params, grid.q_axis[j], grid.s_axis[i]);
    return out;
}

/*! SSE of the surface against a grid. */
inline double surface_sse(const SemanticLossParams& params, const AccuracyGrid& grid) {
    double sse = 0.0;
    for (std::size_t i = 0; i < grid.n_s(); ++i)
        for (std::size_t j = 0; j < grid.n_q(); ++j) {
            const double r =
                grid.values[i][j] - eval_semantic_loss(params, grid.q_axis[j], grid.s_axis[i]);
            sse += r * r;
        }
    return sse;
}

/*! Accumulated SSE gradients over all grid points.
 *
 *  With eps = y - xi_acc at each point, beta_k = exp(mu5_k q) and sigma_k the
 *  term's logistic factor:
 *
 *    d/d mu1_k = sum -2 eps beta_k
 *    d/d mu2_k = sum -2 eps beta_k sigma_k
 *    d/d mu3_k = sum -2 eps beta_k mu2_k sigma_k (1 - sigma_k) s
 *    d/d mu4_k = sum -2 eps beta_k mu2_k sigma_k (1 - sigma_k)
 *    d/d mu5_k = sum -2 eps beta_k q (mu1_k + mu2_k sigma_k)
 *    d/d mu0   = sum -2 eps
 *
 *  These are the exact partial derivatives of SSE = sum (y - xi_acc)^2.
 *  Accumulators start at zero on every call; there is no cross-call state. */
inline SurfaceGradients semantic_loss_gradients(const SemanticLossParams& params,
                                                const AccuracyGrid& grid) {
    const std::size_t nc = params.n_terms();
    SurfaceGradients g(nc);
    std::vector<GradientTerms> scratch(nc);
    for (std::size_t i = 0; i < grid.n_s(); ++i) {
        const double s = grid.s_axis[i];
        for (std::size_t j = 0; j < grid.n_q(); ++j) {
            const double q = grid.q_axis[j];
            double xi = params.mu0;
            for (std::size_t k = 0; k < nc; ++k) {
                const auto& t = params.terms[k];
                scratch[k].sigma = detail::term_sigma(t, s);
                scratch[k].beta = detail::term_beta(t, q, k);
                xi += (t.mu1 + t.mu2 * scratch[k].sigma) * scratch[k].beta;
            }
            const double eps = grid.values[i][j] - xi;
            g.d_mu0 += -2.0 * eps;
            for (std::size_t k = 0; k < nc; ++k) {
                const auto& t = params.terms[k];
                const double sig = scratch[k].sigma;
                const double beta = scratch[k].beta;
                const double gate = sig * (1.0 - sig);
                g.d_terms[k][0] += -2.0 * eps * beta;
                g.d_terms[k][1] += -2.0 * eps * beta * sig;
                g.d_terms[k][2] += -2.0 * eps * beta * t.mu2 * gate * s;
                g.d_terms[k][3] += -2.0 * eps * beta * t.mu2 * gate;
                g.d_terms[k][4] += -2.0 * eps * beta * q * (t.mu1 + t.mu2 * sig);
            }
        }
    }
    return g;
}

} // namespace semloss
