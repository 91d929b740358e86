#pragma once

// Randomized checks of the sublinear-expectation axioms (monotonicity,
// constant preservation, sub-additivity, positive homogeneity) and of the
// capacity duality V(A) + v(A^c) = 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gexlab/ambiguity.hpp"
#include "gexlab/phi.hpp"
#include "gexlab/sampling.hpp"

namespace gexlab {

/// Signed excesses; an axiom holds when its excess is <= tolerance.
struct AxiomExcess {
  double monotonicity = 0.0;        ///< E[min(f,g)] - E[f]
  double constantPreserving = 0.0;  ///< |E[c] - c|
  double subadditivity = 0.0;       ///< E[f+g] - E[f] - E[g]
  double homogeneity = 0.0;         ///< |E[lambda f] - lambda E[f]|
  double lowerAboveUpper = 0.0;     ///< lowerE[f] - upperE[f]
  bool argmaxStable = true;         ///< argmax law set of lambda f equals f's
};

AxiomExcess checkAxioms(const AmbiguitySet& set, const RealFunction& f,
                        const RealFunction& g, double constant, double lambda);

struct AxiomStatistic {
  double maxExcess = 0.0;
  std::size_t violations = 0;
};

struct AxiomTrialRecord {
  std::size_t trial;
  std::size_t lawCount;
  std::string f;
  std::string g;
  AxiomExcess excess;
};

struct AxiomSummary {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  AxiomStatistic monotonicity;
  AxiomStatistic constantPreserving;
  AxiomStatistic subadditivity;
  AxiomStatistic homogeneity;
  AxiomStatistic lowerAboveUpper;
  std::size_t argmaxChanges = 0;
  std::vector<AxiomTrialRecord> records;
  bool pass = true;
};

/// Draws a random catalog function (with random parameters where the entry
/// takes them).
PhiSpec randomCatalogPhi(Rng& rng);

/// `trials` random sets with random catalog pairs; when `extra` is given it
/// is checked as well, once per trial with that trial's pair.
AxiomSummary runAxiomTrials(std::size_t trials, std::uint64_t seed,
                            const RandomSetOptions& options = {},
                            double tolerance = 1e-12,
                            const AmbiguitySet* extra = nullptr);

struct DualitySummary {
  std::size_t checks = 0;
  double maxDeviation = 0.0;  ///< max |V(A) + v(A^c) - 1|
  bool pass = true;
};

/// Random interval events [a, b] (and their complements) on random sets.
DualitySummary runDualityTrials(std::size_t sets, std::size_t eventsPerSet,
                                std::uint64_t seed,
                                const RandomSetOptions& options = {},
                                double tolerance = 1e-12);

}  // namespace gexlab
