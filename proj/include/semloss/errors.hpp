#pragma once

#include <stdexcept>
#include <string>

namespace semloss {

// ============================================================================
// Error hierarchy
//
// Three categories, matching the process exit codes of the CLI frontend:
//   input_error -> exit 2   (bad arguments, malformed files, domain violations)
//   fit_error   -> exit 3   (an optimization failed to produce a usable result)
//   eval_error  -> exit 3   (model evaluation left the representable range)
// Verification failures (gradient checks) are reported via return values, not
// exceptions, so the caller can format diagnostics before exiting with code 4.
// ============================================================================

/*! Invalid input: arguments, file contents, or domain preconditions. */
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/*! Model evaluation error: an exponent left the safe range, or a non-finite
 *  value appeared where a finite one is required. */
class eval_error : public std::runtime_error {
public:
    explicit eval_error(const std::string& what) : std::runtime_error(what) {}
};

/*! Optimization failure: every start diverged, or parameters became
 *  non-finite during descent. */
class fit_error : public std::runtime_error {
public:
    explicit fit_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace semloss
