#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "semloss/errors.hpp"
#include "semloss/fit_report.hpp"
#include "semloss/grid.hpp"
#include "semloss/metrics.hpp"
#include "semloss/model1d.hpp"

namespace semloss {

// ============================================================================
// Linear least squares for the linear-in-coefficients families
//
// Poly-2, Poly-3 and Log are linear in their parameters, so the exact
// least-squares optimum comes from one rank-revealing QR solve.  The
// orthogonality of the residual to every design column is the built-in
// certificate of optimality and is asserted by the test suite.
// ============================================================================

namespace detail {

inline Eigen::MatrixXd design_matrix(ModelFamily family, const std::vector<double>& x) {
    const auto n = static_cast<Eigen::Index>(x.size());
    switch (family) {
        case ModelFamily::poly2: {
            Eigen::MatrixXd m(n, 3);
            for (Eigen::Index i = 0; i < n; ++i)
                m.row(i) << x[i] * x[i], x[i], 1.0;
            return m;
        }
        case ModelFamily::poly3: {
            Eigen::MatrixXd m(n, 4);
            for (Eigen::Index i = 0; i < n; ++i)
                m.row(i) << x[i] * x[i] * x[i], x[i] * x[i], x[i], 1.0;
            return m;
        }
        case ModelFamily::log: {
            Eigen::MatrixXd m(n, 2);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (x[i] <= 0.0)
                    throw input_error("log fit requires every x > 0, got x = " +
                                      std::to_string(x[i]));
                m.row(i) << std::log(x[i]), 1.0;
            }
            return m;
        }
        default:
            throw input_error(std::string("fit_linear_1d: family '") + family_name(family) +
                              "' is not linear in its parameters");
    }
}

} // namespace detail

/*! Exact least-squares fit of a linear-in-parameters family via column-pivoted
 *  Householder QR.  Throws fit_error on a rank-deficient design (including
 *  the underdetermined case of fewer points than parameters). */
inline FitReport fit_linear_1d(ModelFamily family, const Series1D& series) {
    validate_series(series);
    const std::size_t n_params = param_count(family);
    if (series.size() < n_params)
        throw fit_error(std::string("fit_linear_1d: ") + family_name(family) + " needs at least " +
                        std::to_string(n_params) + " points, got " +
                        std::to_string(series.size()));

    const Eigen::MatrixXd design = detail::design_matrix(family, series.x);
    Eigen::VectorXd y(static_cast<Eigen::Index>(series.size()));
    for (std::size_t i = 0; i < series.size(); ++i) y[static_cast<Eigen::Index>(i)] = series.y[i];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < design.cols())
        throw fit_error(std::string("fit_linear_1d: rank-deficient design matrix for ") +
                        family_name(family) + " (rank " + std::to_string(qr.rank()) + " of " +
                        std::to_string(design.cols()) + ")");
    const Eigen::VectorXd coeffs = qr.solve(y);

    std::vector<double> cv(coeffs.data(), coeffs.data() + coeffs.size());
    FitReport report;
    report.params = params_from_vector(family, cv);
    report.data_label = series.label;
    report.converged = true;

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
    report.trace = {{0, report.sse}};
    return report;
}

} // namespace semloss
