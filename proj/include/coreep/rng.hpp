// Deterministic random sources for the generators. Every draw is derived
// from raw mt19937_64 output (never through distribution objects, whose
// algorithms vary between standard libraries), so a fixed seed reproduces
// bit-identical matrices.

#pragma once

#include <cstdint>
#include <random>

#include "coreep/matrix.hpp"

namespace coreep {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in (-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }

    /// Standard complex gaussian via Box-Muller.
    Complex normal();

    /// Uniform point on the unit circle.
    Complex phase();

    /// Uniform modulus in [lo, hi] with uniform phase.
    Complex annulus(double lo, double hi);

  private:
    std::mt19937_64 eng_;
};

CMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre sample with phase fixing.
CMatrix haar_unitary(int n, Rng& rng);

/// Invertible, mildly non-normal similarity with condition number <= ~2.4.
CMatrix well_conditioned_similarity(int n, Rng& rng);

}  // namespace coreep
