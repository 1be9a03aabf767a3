#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"

#include <cstdint>

namespace whfact {

// splitmix64: 64-bit state, platform-independent stream, good enough for
// reproducible test corpora.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97f4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1] x [-1, 1] i
  Complex uniform_complex() { return {2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0}; }

 private:
  std::uint64_t state_;
};

// Seeded random instance with delta = I, alpha blocks rescaled to spectral
// radii in [0.2, 0.6], and the coupling blocks gamma/beta jointly rescaled
// so that max_{|z|=1} ||R(z) - delta|| equals `coupling` (the perturbation
// enters bilinearly, so a square-root factor does it).  coupling <= ~0.5
// keeps R invertible on the circle with both canonical factorizations.
StableRepresentation random_stable_representation(std::uint64_t seed, Eigen::Index dim_minus,
                                                  Eigen::Index dim_plus, Eigen::Index dim_value,
                                                  double coupling);

}  // namespace whfact
