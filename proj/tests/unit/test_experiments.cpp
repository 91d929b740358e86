#include <doctest.h>

#include <cmath>
#include <vector>

#include "gexlab/errors.hpp"
#include "gexlab/experiments.hpp"
#include "gexlab/sampling.hpp"

using namespace gexlab;

namespace {

const std::vector<std::int64_t> kPowers{4, 8, 16, 32, 64, 128};

AmbiguitySet coin() { return AmbiguitySet({DiscreteDistribution::symmetricPair(1.0, 1)}); }

AmbiguitySet drifting() {
  return AmbiguitySet({DiscreteDistribution::symmetricPair(1.0, 1),
                       DiscreteDistribution(1.0, {{0, 0.5}, {1, 0.5}})},
                      {"fair", "biased"});
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("mean-zero hypothesis") {
    CHECK_NOTHROW(requireMeanZero(referenceSet()));
    CHECK_THROWS_WITH_AS(requireMeanZero(drifting()), doctest::Contains("biased (mean 0.5)"),
                         HypothesisError);
    CHECK_THROWS_AS(momentScan(drifting(), 4, kPowers), HypothesisError);
    CHECK_THROWS_AS(cltConvergence(drifting(), PhiSpec::abs(), {8, 16}), HypothesisError);
  }

  TEST_CASE("log-log slope over the upper half") {
    const std::vector<std::int64_t> ns{1, 2, 4, 8, 16, 32};
    std::vector<double> v;
    for (auto n : ns) v.push_back(3.0 * std::pow(static_cast<double>(n), 1.75));
    CHECK(upperHalfLogLogSlope(ns, v) == doctest::Approx(1.75).epsilon(1e-12));
    // lower half is ignored
    v[0] = 1000.0;
    v[1] = 1e-3;
    CHECK(upperHalfLogLogSlope(ns, v) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK_THROWS_AS(upperHalfLogLogSlope(std::vector<std::int64_t>{1}, std::vector<double>{1.0}),
                    ConfigurationError);
    CHECK_THROWS_AS(upperHalfLogLogSlope(std::vector<std::int64_t>{1, 2, 4},
                                         std::vector<double>{1.0, 0.0, 2.0}),
                    ConfigurationError);
  }

  TEST_CASE("fourth moment of a simple random walk") {
    // E[S_n^4] = 3n^2 - 2n for +-1 steps
    const auto scan = momentScan(coin(), 4, kPowers);
    REQUIRE(scan.entries.size() == kPowers.size());
    for (const auto& e : scan.entries) {
      const double n = static_cast<double>(e.n);
      CHECK(e.value == doctest::Approx(3 * n * n - 2 * n).epsilon(1e-12));
    }
    CHECK(scan.pass);
    CHECK(scan.fittedSlope <= 2.1);
    CHECK(scan.fittedK == doctest::Approx(3.0 - 2.0 / 128.0).epsilon(1e-12));
  }

  TEST_CASE("moment scan slope on the reference set") {
    for (const double r : {2.5, 3.0, 4.0}) {
      CAPTURE(r);
      const auto scan = momentScan(referenceSet(), r, {4, 8, 16, 32, 64, 128, 256});
      CHECK(scan.pass);
      CHECK(scan.fittedSlope == doctest::Approx(r / 2).epsilon(0.02));
    }
  }

  TEST_CASE("moment scan argument checks") {
    CHECK_THROWS_AS(momentScan(coin(), 2.0, kPowers), ConfigurationError);
    CHECK_THROWS_AS(momentScan(coin(), 3.0, {4, 8, 16}), ConfigurationError);
    CHECK_THROWS_AS(momentScan(coin(), 3.0, {4, 8, 12, 16}), ConfigurationError);
    CHECK_THROWS_AS(momentScan(coin(), 3.0, {4, 8, 8, 16}), ConfigurationError);
  }

  TEST_CASE("variance grows linearly for mean-zero sets") {
    Rng rng(12);
    RandomSetOptions options;
    options.meanZero = true;
    for (int t = 0; t < 10; ++t) {
      const auto set = randomAmbiguitySet(rng, options);
      const auto entries = varianceSubadditivityCheck(set, 12);
      REQUIRE(entries.size() == 12);
      const double sigma2 = momentEnvelope(set).varUpper;
      for (const auto& e : entries) {
        CHECK(e.pass);
        CHECK(e.lhs == doctest::Approx(static_cast<double>(e.n) * sigma2).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("uniform moment check") {
    const auto p1 = uniformMomentCheck(referenceSet(), 1.0, kPowers);
    for (const auto& e : p1.entries) CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p1.pass);
    for (const double p : {2.0, 3.0}) {
      const auto check = uniformMomentCheck(referenceSet(), p, kPowers);
      CHECK(check.pass);
      CHECK(check.maxValue < 100.0);
    }
    CHECK_THROWS_AS(uniformMomentCheck(referenceSet(), 0.5, kPowers), ConfigurationError);
  }

  TEST_CASE("CLT convergence on the reference set") {
    const auto report = cltConvergence(referenceSet(), PhiSpec::abs(), {8, 32, 128});
    CHECK(report.envelope.varUpper == 1.0);
    CHECK(report.envelope.varLower == 0.25);
    // |x| is convex, so the limit is E|N(0, 1)|
    CHECK(report.pdeValue == doctest::Approx(std::sqrt(2.0 / 3.141592653589793)).epsilon(1e-3));
    REQUIRE(report.entries.size() == 3);
    CHECK(report.errorsDecreasing);
    CHECK(report.entries[0].absError > report.entries[2].absError);
    CHECK(report.finalError == report.entries[2].absError);
  }

  TEST_CASE("independence scan") {
    Rng rng(4);
    for (int t = 0; t < 5; ++t) {
      const auto x = randomAmbiguitySet(rng);
      const auto y = randomAmbiguitySet(rng);
      const auto scan = independenceScan(x, y, defaultThresholds(x));
      CHECK(scan.entries.size() == 625);
      CHECK(scan.pass);
      CHECK(scan.maxDeviation <= 1e-12);
    }
    const auto th = defaultThresholds(referenceSet());
    REQUIRE(th.size() == 5);
    CHECK(th.front() == -1.25);
    CHECK(th.back() == 1.25);
  }

  TEST_CASE("envelope parameters") {
    const auto g = envelopeParams(momentEnvelope(referenceSet()));
    CHECK(g.sigmaLower() == 0.5);
    CHECK(g.sigmaUpper() == 1.0);
  }
}
