//==============================================================================
// rng.hpp
// Deterministic random streams. std::mt19937_64 drives everything; normals use
// an explicit Box-Muller so sequences do not depend on the standard library's
// distribution internals.
//==============================================================================
#pragma once

#include <cstdint>
#include <random>

#include "core.hpp"

namespace oseen2d {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return (eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stable per-item sub-seed: depends only on (seed, index), so an ensemble of
/// count n is a prefix of the ensemble of count m > n.
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace oseen2d
