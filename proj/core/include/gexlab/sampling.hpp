#pragma once

// Seeded generators for randomized property checks. Only integer outputs of
// std::mt19937_64 are used, so streams are identical across standard
// libraries.

#include <cstdint>
#include <random>

#include "gexlab/ambiguity.hpp"

namespace gexlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

struct RandomSetOptions {
  std::size_t maxLaws = 4;
  std::size_t maxAtoms = 5;
  std::int64_t indexRadius = 3;  ///< atoms drawn from [-radius, radius]
  double minStep = 0.1;
  double maxStep = 1.0;
  bool meanZero = false;
};

AmbiguitySet randomAmbiguitySet(Rng& rng, const RandomSetOptions& options = {});

/// {+-1 w.p. 1/2; +-0.5 w.p. 1/2} on the lattice 0.5 Z.
AmbiguitySet referenceSet();

}  // namespace gexlab
