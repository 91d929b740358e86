#include "gexlab/axioms.hpp"

#include <algorithm>
#include <cmath>

namespace gexlab {

namespace {

void accumulate(AxiomStatistic& stat, double excess, double tolerance) {
  stat.maxExcess = std::max(stat.maxExcess, excess);
  if (!(excess <= tolerance)) ++stat.violations;
}

}  // namespace

AxiomExcess checkAxioms(const AmbiguitySet& set, const RealFunction& f,
                        const RealFunction& g, double constant, double lambda) {
  AxiomExcess out;
  const double ef = upperExpectation(set, f).value;
  const double eg = upperExpectation(set, g).value;

  const double eMin =
      upperExpectation(set, [&](double x) { return std::min(f(x), g(x)); }).value;
  const double eMax =
      upperExpectation(set, [&](double x) { return std::max(f(x), g(x)); }).value;
  out.monotonicity = std::max({eMin - ef, eMin - eg, ef - eMax, eg - eMax});

  const double ec = upperExpectation(set, [constant](double) { return constant; }).value;
  out.constantPreserving = std::abs(ec - constant);

  const double eSum =
      upperExpectation(set, [&](double x) { return f(x) + g(x); }).value;
  out.subadditivity = eSum - ef - eg;

  const RealFunction scaled = [&](double x) { return lambda * f(x); };
  out.homogeneity = std::abs(upperExpectation(set, scaled).value - lambda * ef);

  out.lowerAboveUpper = lowerExpectation(set, f).value - ef;

  if (lambda > 0.0) {
    constexpr double kTieTolerance = 1e-12;
    out.argmaxStable = argmaxLaws(set, f, kTieTolerance) ==
                       argmaxLaws(set, scaled, kTieTolerance * lambda);
  }
  return out;
}

PhiSpec randomCatalogPhi(Rng& rng) {
  switch (rng.integer(0, 9)) {
    case 0:
      return PhiSpec::abs();
    case 1:
      return PhiSpec::square();
    case 2:
      return PhiSpec::cube();
    case 3:
      return PhiSpec::quartic();
    case 4:
      return PhiSpec::negSquare();
    case 5:
      return PhiSpec::negAbs();
    case 6:
      return PhiSpec::absPow(rng.uniform(1.0, 4.0));
    case 7:
      return PhiSpec::ramp(rng.uniform(-1.0, 1.0));
    case 8: {
      const double a = rng.uniform(-1.5, 0.0);
      return PhiSpec::clamp(a, a + rng.uniform(0.1, 2.0));
    }
    default: {
      const double a = rng.uniform(-1.5, 1.0);
      return PhiSpec::indicator(a, a + rng.uniform(0.0, 1.5));
    }
  }
}

AxiomSummary runAxiomTrials(std::size_t trials, std::uint64_t seed,
                            const RandomSetOptions& options, double tolerance,
                            const AmbiguitySet* extra) {
  AxiomSummary summary;
  summary.trials = trials;
  summary.seed = seed;
  summary.tolerance = tolerance;
  Rng rng(seed);

  auto fold = [&](std::size_t trial, const AmbiguitySet& set, const PhiSpec& f,
                  const PhiSpec& g, double c, double lambda) {
    const AxiomExcess e = checkAxioms(
        set, [&f](double x) { return f(x); }, [&g](double x) { return g(x); }, c,
        lambda);
    accumulate(summary.monotonicity, e.monotonicity, tolerance);
    accumulate(summary.constantPreserving, e.constantPreserving, tolerance);
    accumulate(summary.subadditivity, e.subadditivity, tolerance);
    accumulate(summary.homogeneity, e.homogeneity, tolerance);
    accumulate(summary.lowerAboveUpper, e.lowerAboveUpper, tolerance);
    if (!e.argmaxStable) ++summary.argmaxChanges;
    summary.records.push_back({trial, set.size(), f.name(), g.name(), e});
  };

  for (std::size_t t = 0; t < trials; ++t) {
    const AmbiguitySet set = randomAmbiguitySet(rng, options);
    const PhiSpec f = randomCatalogPhi(rng);
    const PhiSpec g = randomCatalogPhi(rng);
    const double c = rng.uniform(-10.0, 10.0);
    const double lambda = rng.uniform(0.0, 5.0);
    fold(t, set, f, g, c, lambda);
    if (extra != nullptr) fold(t, *extra, f, g, c, lambda);
  }

  summary.pass = summary.monotonicity.violations == 0 &&
                 summary.constantPreserving.violations == 0 &&
                 summary.subadditivity.violations == 0 &&
                 summary.homogeneity.violations == 0 &&
                 summary.lowerAboveUpper.violations == 0 &&
                 summary.argmaxChanges == 0;
  return summary;
}

DualitySummary runDualityTrials(std::size_t sets, std::size_t eventsPerSet,
                                std::uint64_t seed,
                                const RandomSetOptions& options,
                                double tolerance) {
  DualitySummary summary;
  Rng rng(seed);
  for (std::size_t s = 0; s < sets; ++s) {
    const AmbiguitySet set = randomAmbiguitySet(rng, options);
    const double reach =
        static_cast<double>(set.maxAbsIndex() + 1) * set.step();
    for (std::size_t e = 0; e < eventsPerSet; ++e) {
      const double a = rng.uniform(-reach, reach);
      const double b = a + rng.uniform(0.0, reach);
      const auto inside = [a, b](double x) { return x >= a && x <= b; };
      const auto outside = [a, b](double x) { return !(x >= a && x <= b); };
      const CapacityPair event = capacityPair(set, inside);
      const CapacityPair complement = capacityPair(set, outside);
      const double deviation = std::max(std::abs(event.upper + complement.lower - 1.0),
                                        std::abs(complement.upper + event.lower - 1.0));
      summary.maxDeviation = std::max(summary.maxDeviation, deviation);
      ++summary.checks;
    }
  }
  summary.pass = summary.maxDeviation <= tolerance;
  return summary;
}

}  // namespace gexlab
