#pragma once

#include <cstdint>
#include <random>

namespace semloss {

// ============================================================================
// Deterministic random source
//
// All randomness in the library flows through this wrapper.  The uniform
// mapping is hand-rolled (top 53 bits of the 64-bit output) because
// std::uniform_real_distribution is implementation-defined and would break
// cross-platform reproducibility of seeded runs.
// ============================================================================

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /*! Uniform in [0, 1): 53 high bits scaled by 2^-53. */
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /*! Uniform in [lo, hi). */
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

private:
    std::mt19937_64 engine_;
};

} // namespace semloss
