#pragma once

#include <cmath>
#include <string>

#include "semloss/errors.hpp"

namespace semloss {

// ============================================================================
// Shannon-gap arithmetic
//
// For an actual transmission rate r (bit/s/Hz), the SNR at which the Shannon
// limit exactly supports r is gamma_Shannon = 10 log10(2^r - 1) dB.  The gap
// ratio s divides the received SNR (dB) by that threshold (dB); the ratio of
// two dB values is unusual dimensionally but is exactly how the reference
// data's s levels were produced, so it is implemented as written.
//
// At r = 1, gamma_Shannon = 0 dB and the ratio is undefined; that case is an
// explicit error so no non-finite s can ever reach the fitting code.
// ============================================================================

/*! A received-SNR / rate operating point. */
struct LinkOperatingPoint {
    double gamma_db = 0.0;      //!< received SNR in dB (finite)
    double rate_bps_hz = 1.0;   //!< actual transmission rate per Hz, > 0
};

/*! gamma_Shannon = 10 log10(2^r - 1), strictly increasing in r. */
inline double shannon_snr_db(double rate_bps_hz) {
    if (!(rate_bps_hz > 0.0))
        throw input_error("shannon_snr_db: rate must be > 0, got " +
                          std::to_string(rate_bps_hz));
    // exp2 keeps integer rates exact: r = 1 gives 10 log10(1) = 0 dB precisely
    return 10.0 * std::log10(std::exp2(rate_bps_hz) - 1.0);
}

/*! Shannon-gap ratio s = gamma_db / gamma_Shannon(rate).  Undefined at r = 1. */
inline double snr_ratio(const LinkOperatingPoint& point) {
    if (!std::isfinite(point.gamma_db))
        throw input_error("snr_ratio: gamma_db must be finite");
    const double denom = shannon_snr_db(point.rate_bps_hz);
    if (denom == 0.0)
        throw input_error("snr_ratio: undefined at rate = 1 bit/s/Hz "
                          "(Shannon threshold is 0 dB)");
    return point.gamma_db / denom;
}

} // namespace semloss
