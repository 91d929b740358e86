#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "gexlab/errors.hpp"
#include "gexlab/pengsum.hpp"
#include "gexlab/phi.hpp"
#include "gexlab/sampling.hpp"

using namespace gexlab;

namespace {

const RealFunction kSquare = [](double x) { return x * x; };
const RealFunction kAbs = [](double x) { return std::abs(x); };

AmbiguitySet pairAndZero() {
  return AmbiguitySet({DiscreteDistribution::symmetricPair(1.0, 1),
                       DiscreteDistribution::pointMass(1.0, 0)});
}

// Test-side oracle: law of S_n for i.i.d. steps from one law, by repeated
// convolution of atom lists.
std::map<std::int64_t, double> convolvedLaw(const DiscreteDistribution& law, int n) {
  std::map<std::int64_t, double> dist{{0, 1.0}};
  for (int i = 0; i < n; ++i) {
    std::map<std::int64_t, double> next;
    for (const auto& [s, p] : dist) {
      for (const auto& atom : law.atoms()) next[s + atom.index] += p * atom.probability;
    }
    dist = next;
  }
  return dist;
}

double classicalExpectation(const DiscreteDistribution& law, int n, const RealFunction& f) {
  double e = 0.0;
  for (const auto& [s, p] : convolvedLaw(law, n)) e += p * f(static_cast<double>(s) * law.step());
  return e;
}

std::vector<RealFunction> catalogFunctions(std::vector<PhiSpec> specs) {
  std::vector<RealFunction> fs;
  for (const auto& spec : specs) fs.push_back([spec](double x) { return spec(x); });
  return fs;
}

RandomSetOptions smallSets() {
  RandomSetOptions o;
  o.maxLaws = 3;
  o.maxAtoms = 3;
  o.indexRadius = 1;
  return o;
}

}  // namespace

TEST_SUITE("pengsum") {
  TEST_CASE("one-step operator on x^2 under +-1") {
    const AmbiguitySet set({DiscreteDistribution::symmetricPair(1.0, 1)});
    const auto f = GridFunction::sample({1.0, -10, 10}, kSquare);
    const GridFunction tf = oneStepOperator(set, f);
    CHECK(tf.grid().minIndex == -9);
    CHECK(tf.grid().maxIndex == 9);
    for (std::int64_t k = -9; k <= 9; ++k) {
      CHECK(tf.at(k) == static_cast<double>(k * k + 1));
    }
  }

  TEST_CASE("one-step operator picks the larger law pointwise") {
    const auto f = GridFunction::sample({1.0, -5, 5}, kSquare);
    const GridFunction tf = oneStepOperator(pairAndZero(), f);
    for (std::int64_t k = -4; k <= 4; ++k) CHECK(tf.at(k) == static_cast<double>(k * k + 1));
  }

  TEST_CASE("one-step operator preserves constants") {
    const auto f = GridFunction::sample({0.5, -6, 6}, [](double) { return 4.5; });
    const GridFunction tf = oneStepOperator(referenceSet(), f);
    for (const double v : tf.values()) CHECK(v == 4.5);
  }

  TEST_CASE("one-step operator rejects small or mismatched grids") {
    const AmbiguitySet set({DiscreteDistribution::symmetricPair(1.0, 1)});
    CHECK_THROWS_WITH_AS(oneStepOperator(set, GridFunction::sample({1.0, 0, 1}, kSquare)),
                         doctest::Contains("margin of 2"), DomainError);
    CHECK_THROWS_AS(oneStepOperator(set, GridFunction::sample({0.5, -4, 4}, kSquare)),
                    DomainError);
  }

  TEST_CASE("grid functions must be finite and sized") {
    CHECK_THROWS_AS(GridFunction({1.0, 0, 2}, {1.0, 2.0}), ConstructionError);
    CHECK_THROWS_AS(GridFunction({1.0, 0, 1}, {1.0, NAN}), EvaluationError);
  }

  TEST_CASE("sum expectation examples") {
    const AmbiguitySet coin({DiscreteDistribution::symmetricPair(1.0, 1)});
    // S_2 in {-2, 0, 2} w.p. {1/4, 1/2, 1/4}
    CHECK(sumExpectation(coin, 2, kAbs) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sumExpectation(referenceSet(), 1, kSquare) == 1.0);

    Rng rng(3);
    RandomSetOptions meanZero;
    meanZero.meanZero = true;
    for (int t = 0; t < 20; ++t) {
      const auto set = randomAmbiguitySet(rng, meanZero);
      const int n = static_cast<int>(rng.integer(1, 12));
      CHECK(std::abs(sumExpectation(set, n, [](double x) { return x; })) <= 1e-12);
    }
  }

  TEST_CASE("normalized sum expectation examples") {
    const AmbiguitySet coin({DiscreteDistribution::symmetricPair(1.0, 1)});
    CHECK(normalizedSumExpectation(coin, 4, kSquare) == doctest::Approx(1.0).epsilon(1e-14));
    for (int n : {1, 5, 17}) {
      CHECK(normalizedSumExpectation(referenceSet(), n, [](double) { return -2.0; }) == -2.0);
    }
    const double dp = normalizedSumExpectation(referenceSet(), 2, kSquare);
    const double brute = bruteForceAdaptedOracle(
        referenceSet(), 2, [](double x) { return x * x / 2.0; });
    CHECK(dp == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(dp - brute) <= 1e-14);
  }

  TEST_CASE("invalid n and overflow") {
    CHECK_THROWS_AS(sumExpectation(referenceSet(), 0, kAbs), ConfigurationError);
    const std::int64_t huge = std::int64_t{1} << 40;
    const AmbiguitySet wide({DiscreteDistribution(1.0, {{-huge, 0.5}, {huge, 0.5}})});
    CHECK_THROWS_AS(sumExpectation(wide, 2, kAbs), SizeError);
  }

  TEST_CASE("oracle equals the classical expectation for one law") {
    Rng rng(11);
    RandomSetOptions options = smallSets();
    options.maxLaws = 1;
    options.indexRadius = 2;
    for (int t = 0; t < 10; ++t) {
      const auto set = randomAmbiguitySet(rng, options);
      for (int n = 1; n <= 4; ++n) {
        const double expected = classicalExpectation(set.law(0), n, kAbs);
        CHECK(std::abs(bruteForceAdaptedOracle(set, n, kAbs) - expected) <= 1e-12);
        CHECK(std::abs(sumExpectation(set, n, kAbs) - expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("oracle example: {+-1, 0}, n = 2, |x|") {
    CHECK(bruteForceAdaptedOracle(pairAndZero(), 2, kAbs) == doctest::Approx(1.0));
    CHECK(sumExpectation(pairAndZero(), 2, kAbs) == doctest::Approx(1.0));
  }

  TEST_CASE("adaptivity dominates every fixed law sequence") {
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
      const auto set = randomAmbiguitySet(rng, smallSets());
      for (const auto& f : catalogFunctions(PhiSpec::catalog())) {
        for (int n = 1; n <= 3; ++n) {
          const double dp = sumExpectation(set, n, f);
          const double brute = bruteForceAdaptedOracle(set, n, f);
          // every sequence in laws^n
          std::vector<std::size_t> seq(static_cast<std::size_t>(n), 0);
          while (true) {
            const double fixed = fixedStrategyExpectation(set, seq, f);
            CHECK(dp >= fixed - 1e-12);
            CHECK(brute >= fixed - 1e-12);
            std::size_t d = 0;
            while (d < seq.size() && ++seq[d] == set.size()) seq[d++] = 0;
            if (d == seq.size()) break;
          }
        }
      }
    }
  }

  TEST_CASE("dynamic programming matches the brute-force oracle") {
    Rng rng(2024);
    const auto fs = catalogFunctions({PhiSpec::abs(), PhiSpec::square(), PhiSpec::cube(),
                                      PhiSpec::quartic(), PhiSpec::clamp(-1, 1),
                                      PhiSpec::indicator(0, 1)});
    for (int t = 0; t < 8; ++t) {
      const auto set = randomAmbiguitySet(rng, smallSets());
      for (const auto& f : fs) {
        for (int n = 1; n <= 4; ++n) {
          OracleOptions options;
          options.ceiling = 100'000'000;
          CHECK(std::abs(sumExpectation(set, n, f) - bruteForceAdaptedOracle(set, n, f, options)) <=
                1e-10);
        }
      }
    }
  }

  TEST_CASE("full-history strategies add nothing for sum functionals") {
    Rng rng(5);
    RandomSetOptions options = smallSets();
    options.maxLaws = 2;
    for (int t = 0; t < 10; ++t) {
      const auto set = randomAmbiguitySet(rng, options);
      for (const auto& f : catalogFunctions(PhiSpec::catalog())) {
        for (int n : {2, 3}) {
          OracleOptions history;
          history.fullHistory = true;
          history.ceiling = 10'000'000;
          const double markov = bruteForceAdaptedOracle(set, n, f);
          CHECK(std::abs(bruteForceAdaptedOracle(set, n, f, history) - markov) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("oracle refuses enumerations above the ceiling") {
    CHECK(oracleStrategyBound(referenceSet(), 4, false) > 1'000'000);
    CHECK_THROWS_AS(bruteForceAdaptedOracle(referenceSet(), 4, kAbs), CapacityError);
    CHECK(oracleStrategyBound(AmbiguitySet({DiscreteDistribution::symmetricPair(1, 1)}), 10,
                              false) == 1);
    // {0}, {-1,1}, {-2,0,2}: 2^(1+2+3)
    const AmbiguitySet two({DiscreteDistribution::symmetricPair(1, 1),
                            DiscreteDistribution(1, {{-1, 0.25}, {1, 0.75}})});
    CHECK(oracleStrategyBound(two, 3, false) == 64);
    CHECK(oracleStrategyBound(two, 3, true) == 128);  // 2^(1+2+4)
  }

  TEST_CASE("expectation of block sums does not depend on the burn-in") {
    Rng rng(8);
    RandomSetOptions options = smallSets();
    options.indexRadius = 2;
    for (int t = 0; t < 6; ++t) {
      const auto set = randomAmbiguitySet(rng, options);
      for (const auto& f : catalogFunctions({PhiSpec::abs(), PhiSpec::cube(), PhiSpec::ramp(0.3)})) {
        for (int n = 1; n <= 3; ++n) {
          const double base = sumExpectation(set, n, f);
          for (int m = 0; m <= 3; ++m) {
            CHECK(std::abs(blockSumExpectation(set, m, n, f) - base) <= 1e-12);
          }
        }
      }
    }
  }

  TEST_CASE("sublinearity in phi") {
    Rng rng(31);
    for (int t = 0; t < 30; ++t) {
      const auto set = randomAmbiguitySet(rng, smallSets());
      const PhiSpec a = PhiSpec::catalog()[static_cast<std::size_t>(rng.integer(0, 9))];
      const PhiSpec b = PhiSpec::catalog()[static_cast<std::size_t>(rng.integer(0, 9))];
      const int n = static_cast<int>(rng.integer(1, 8));
      const double sum = sumExpectation(set, n, [&](double x) { return a(x) + b(x); });
      CHECK(sum <= sumExpectation(set, n, [&](double x) { return a(x); }) +
                       sumExpectation(set, n, [&](double x) { return b(x); }) + 1e-12);
    }
  }

  TEST_CASE("joint expectation examples and product factorization") {
    Rng rng(41);
    RandomSetOptions options;
    options.maxLaws = 2;
    for (int t = 0; t < 40; ++t) {
      const auto x = randomAmbiguitySet(rng, options);
      const auto y = randomAmbiguitySet(rng, options);
      const PhiSpec g = PhiSpec::absPow(rng.uniform(0.5, 3.0));
      const PhiSpec h = PhiSpec::ramp(rng.uniform(-1.0, 1.0));
      const double joint = jointExpectation(x, y, [&](double a, double b) { return g(a) * h(b); });
      const double product = upperExpectation(x, [&](double a) { return g(a); }).value *
                             upperExpectation(y, [&](double b) { return h(b); }).value;
      CHECK(std::abs(joint - product) <= 1e-12);
      CHECK(jointExpectation(x, y, [](double, double) { return 1.5; }) ==
            doctest::Approx(1.5).epsilon(1e-14));
    }
    RandomSetOptions meanZero;
    meanZero.meanZero = true;
    for (int t = 0; t < 20; ++t) {
      const auto x = randomAmbiguitySet(rng, meanZero);
      const auto y = randomAmbiguitySet(rng, meanZero);
      CHECK(std::abs(jointExpectation(x, y, [](double a, double b) { return a + b; })) <= 1e-12);
    }
  }

  TEST_CASE("pairwise independence examples") {
    const auto set = pairAndZero();
    const Predicate positive = [](double v) { return v > 0; };
    const IndependenceCheck c = pairwiseIndependenceCheck(set, set, positive, positive);
    CHECK(c.joint == doctest::Approx(0.25));
    CHECK(c.product == doctest::Approx(0.25));
    CHECK(c.passed());
    CHECK(c.jointLower == 0.0);

    const IndependenceCheck all =
        pairwiseIndependenceCheck(set, set, [](double) { return true; }, positive);
    CHECK(all.joint == capacityPair(set, positive).upper);
    CHECK(all.passed());

    const IndependenceCheck empty =
        pairwiseIndependenceCheck(set, set, [](double) { return false; }, positive);
    CHECK(empty.joint == 0.0);
    CHECK(empty.product == 0.0);
    CHECK(empty.passed());
  }

  TEST_CASE("pairwise independence holds for random intervals") {
    Rng rng(77);
    for (int t = 0; t < 50; ++t) {
      const auto x = randomAmbiguitySet(rng);
      const auto y = randomAmbiguitySet(rng);
      const double a = rng.uniform(-2, 2), b = a + rng.uniform(0, 2);
      const double c = rng.uniform(-2, 2), d = c + rng.uniform(0, 2);
      const auto check = pairwiseIndependenceCheck(
          x, y, [=](double v) { return v >= a && v <= b; },
          [=](double v) { return v >= c && v <= d; });
      CHECK(check.passed());
    }
  }
}
