#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "semloss/errors.hpp"

namespace semloss {

// ============================================================================
// 1-D model families
//
//   Poly-2:   a x^2 + b x + c
//   Poly-3:   a x^3 + b x^2 + c x + d
//   Log:      a ln(x) + b                       (natural logarithm, x > 0)
//   Exp-1:    a exp(b x)
//   Exp-2:    a exp(b x) + c exp(d x)
//   Sigmoid:  b + c / (1 + exp(-d x - e))
//
// Exponentials that can grow without bound are guarded: an exponent argument
// above +700 would overflow double range and raises eval_error.  Arguments
// far below zero merely underflow to 0, which is exact and harmless, so they
// are not treated as errors (the Sigmoid in particular saturates cleanly at
// both ends and never faults).
// ============================================================================

constexpr double kExpArgLimit = 700.0;  //!< exp() overflows past ~709.78

struct Poly2Params { double a, b, c; };
struct Poly3Params { double a, b, c, d; };
struct LogParams { double a, b; };
struct Exp1Params { double a, b; };
struct Exp2Params { double a, b, c, d; };
struct SigmoidParams { double b, c, d, e; };

using Model1DParams =
    std::variant<Poly2Params, Poly3Params, LogParams, Exp1Params, Exp2Params, SigmoidParams>;

enum class ModelFamily { poly2, poly3, log, exp1, exp2, sigmoid };

inline const char* family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::poly2: return "poly2";
        case ModelFamily::poly3: return "poly3";
        case ModelFamily::log: return "log";
        case ModelFamily::exp1: return "exp1";
        case ModelFamily::exp2: return "exp2";
        case ModelFamily::sigmoid: return "sigmoid";
    }
    return "?";
}

inline ModelFamily parse_family(const std::string& name) {
    if (name == "poly2") return ModelFamily::poly2;
    if (name == "poly3") return ModelFamily::poly3;
    if (name == "log") return ModelFamily::log;
    if (name == "exp1") return ModelFamily::exp1;
    if (name == "exp2") return ModelFamily::exp2;
    if (name == "sigmoid") return ModelFamily::sigmoid;
    throw input_error("unknown model family '" + name +
                      "' (expected poly2|poly3|log|exp1|exp2|sigmoid)");
}

inline ModelFamily family_of(const Model1DParams& p) {
    return static_cast<ModelFamily>(p.index());
}

/*! Number of free parameters in a family. */
inline std::size_t param_count(ModelFamily f) {
    switch (f) {
        case ModelFamily::poly2: return 3;
        case ModelFamily::poly3: return 4;
        case ModelFamily::log: return 2;
        case ModelFamily::exp1: return 2;
        case ModelFamily::exp2: return 4;
        case ModelFamily::sigmoid: return 4;
    }
    return 0;
}

namespace detail {

/*! exp() with the growth guard: args past +700 raise, deep-negative args
 *  underflow to 0 silently. */
inline double guarded_exp(double arg, const char* context) {
    if (arg > kExpArgLimit)
        throw eval_error(std::string("exponent overflow in ") + context +
                         " (argument " + std::to_string(arg) + " exceeds " +
                         std::to_string(kExpArgLimit) + ")");
    return std::exp(arg);
}

/*! Numerically stable logistic 1/(1+exp(-z)); exact saturation at the ends. */
inline double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double ez = std::exp(z);
    return ez / (1.0 + ez);
}

} // namespace detail

/*! Flatten params into the family's canonical coefficient order. */
inline std::vector<double> param_vector(const Model1DParams& p) {
    return std::visit(
        [](const auto& v) -> std::vector<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Poly2Params>) return {v.a, v.b, v.c};
            else if constexpr (std::is_same_v<T, Poly3Params>) return {v.a, v.b, v.c, v.d};
            else if constexpr (std::is_same_v<T, LogParams>) return {v.a, v.b};
            else if constexpr (std::is_same_v<T, Exp1Params>) return {v.a, v.b};
            else if constexpr (std::is_same_v<T, Exp2Params>) return {v.a, v.b, v.c, v.d};
            else return {v.b, v.c, v.d, v.e};
        },
        p);
}

/*! Inverse of param_vector. */
inline Model1DParams params_from_vector(ModelFamily f, const std::vector<double>& v) {
    if (v.size() != param_count(f))
        throw input_error(std::string("param vector length ") + std::to_string(v.size()) +
                          " does not match family " + family_name(f));
    switch (f) {
        case ModelFamily::poly2: return Poly2Params{v[0], v[1], v[2]};
        case ModelFamily::poly3: return Poly3Params{v[0], v[1], v[2], v[3]};
        case ModelFamily::log: return LogParams{v[0], v[1]};
        case ModelFamily::exp1: return Exp1Params{v[0], v[1]};
        case ModelFamily::exp2: return Exp2Params{v[0], v[1], v[2], v[3]};
        case ModelFamily::sigmoid: return SigmoidParams{v[0], v[1], v[2], v[3]};
    }
    throw input_error("params_from_vector: bad family");
}

/*! Evaluate a 1-D model at x.  Log requires x > 0; unbounded exponentials are
 *  overflow-guarded. */
inline double eval_model1d(const Model1DParams& params, double x) {
    if (!std::isfinite(x)) throw input_error("eval_model1d: x must be finite");
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Poly2Params>) {
                return (p.a * x + p.b) * x + p.c;
            } else if constexpr (std::is_same_v<T, Poly3Params>) {
                return ((p.a * x + p.b) * x + p.c) * x + p.d;
            } else if constexpr (std::is_same_v<T, LogParams>) {
                if (x <= 0.0)
                    throw eval_error("log model requires x > 0, got x = " + std::to_string(x));
                return p.a * std::log(x) + p.b;
            } else if constexpr (std::is_same_v<T, Exp1Params>) {
                return p.a * detail::guarded_exp(p.b * x, "exp1");
            } else if constexpr (std::is_same_v<T, Exp2Params>) {
                return p.a * detail::guarded_exp(p.b * x, "exp2 first term") +
                       p.c * detail::guarded_exp(p.d * x, "exp2 second term");
            } else {  // SigmoidParams
                return p.b + p.c * detail::logistic(p.d * x + p.e);
            }
        },
        params);
}

/*! Partial derivatives of the model value with respect to its parameters, in
 *  canonical order (the rows a nonlinear solver needs). */
inline std::vector<double> model1d_jacobian_row(const Model1DParams& params, double x) {
    return std::visit(
        [x](const auto& p) -> std::vector<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Poly2Params>) {
                return {x * x, x, 1.0};
            } else if constexpr (std::is_same_v<T, Poly3Params>) {
                return {x * x * x, x * x, x, 1.0};
            } else if constexpr (std::is_same_v<T, LogParams>) {
                if (x <= 0.0)
                    throw eval_error("log model requires x > 0, got x = " + std::to_string(x));
                return {std::log(x), 1.0};
            } else if constexpr (std::is_same_v<T, Exp1Params>) {
                const double e = detail::guarded_exp(p.b * x, "exp1");
                return {e, p.a * x * e};
            } else if constexpr (std::is_same_v<T, Exp2Params>) {
                const double e1 = detail::guarded_exp(p.b * x, "exp2 first term");
                const double e2 = detail::guarded_exp(p.d * x, "exp2 second term");
                return {e1, p.a * x * e1, e2, p.c * x * e2};
            } else {  // SigmoidParams: f = b + c * sig(dx + e)
                const double sig = detail::logistic(p.d * x + p.e);
                const double slope = sig * (1.0 - sig);
                return {1.0, sig, p.c * slope * x, p.c * slope};
            }
        },
        params);
}

} // namespace semloss
