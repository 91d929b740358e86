#include "gexlab/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"

namespace gexlab {

namespace {

double evaluateAt(const RealFunction& f, double x) {
  const double value = f(x);
  if (!std::isfinite(value)) {
    throw EvaluationError("function is not finite at support point x = " +
                          formatShort(x) + " (value " + formatShort(value) +
                          ")");
  }
  return value;
}

bool sameStep(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(double step, std::vector<Atom> atoms)
    : step_(step), atoms_(std::move(atoms)) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw ConstructionError("lattice step must be positive and finite, got " +
                            formatShort(step_));
  }
  if (atoms_.empty()) {
    throw ConstructionError("a law needs at least one atom");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const double p = atoms_[j].probability;
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ConstructionError("atom " + std::to_string(j) +
                              " has invalid probability " + formatShort(p));
    }
    if (j > 0 && atoms_[j].index <= atoms_[j - 1].index) {
      throw ConstructionError("lattice indices must be strictly increasing (atom " +
                              std::to_string(j) + ")");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw ConstructionError("probabilities sum to " + formatReal(total) +
                            ", expected 1");
  }
}

double DiscreteDistribution::expectation(const RealFunction& f) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    sum += atoms_[j].probability * evaluateAt(f, point(j));
  }
  return sum;
}

double DiscreteDistribution::mean() const {
  return expectation([](double x) { return x; });
}

DiscreteDistribution DiscreteDistribution::symmetricPair(double step,
                                                         std::int64_t k) {
  k = std::abs(k);
  if (k == 0) return pointMass(step, 0);
  return DiscreteDistribution(step, {{-k, 0.5}, {k, 0.5}});
}

DiscreteDistribution DiscreteDistribution::pointMass(double step,
                                                     std::int64_t k) {
  return DiscreteDistribution(step, {{k, 1.0}});
}

AmbiguitySet::AmbiguitySet(std::vector<DiscreteDistribution> laws,
                           std::vector<std::string> labels)
    : laws_(std::move(laws)), labels_(std::move(labels)) {
  if (laws_.empty()) {
    throw ConstructionError("an ambiguity set needs at least one law");
  }
  if (!labels_.empty() && labels_.size() != laws_.size()) {
    throw ConstructionError("label count does not match law count");
  }
  minIndex_ = laws_.front().minIndex();
  maxIndex_ = laws_.front().maxIndex();
  for (std::size_t i = 0; i < laws_.size(); ++i) {
    if (!sameStep(laws_[i].step(), laws_.front().step())) {
      throw ConstructionError("laws must share a common step (law " +
                              std::to_string(i) + " has step " +
                              formatShort(laws_[i].step()) + ", law 0 has " +
                              formatShort(laws_.front().step()) + ")");
    }
    minIndex_ = std::min(minIndex_, laws_[i].minIndex());
    maxIndex_ = std::max(maxIndex_, laws_[i].maxIndex());
  }
  if (labels_.empty()) {
    labels_.reserve(laws_.size());
    for (std::size_t i = 0; i < laws_.size(); ++i) {
      labels_.push_back("law" + std::to_string(i));
    }
  }
}

std::int64_t AmbiguitySet::maxAbsIndex() const noexcept {
  return std::max(std::abs(minIndex_), std::abs(maxIndex_));
}

std::vector<std::int64_t> AmbiguitySet::unionSupport() const {
  std::vector<std::int64_t> support;
  for (const auto& law : laws_) {
    for (const auto& atom : law.atoms()) support.push_back(atom.index);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

std::vector<double> lawExpectations(const AmbiguitySet& set,
                                    const RealFunction& f) {
  std::vector<double> values;
  values.reserve(set.size());
  for (const auto& law : set.laws()) values.push_back(law.expectation(f));
  return values;
}

Expectation upperExpectation(const AmbiguitySet& set, const RealFunction& f) {
  const auto values = lawExpectations(set, f);
  Expectation best{values.front(), 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best.value) best = {values[i], i};
  }
  return best;
}

Expectation lowerExpectation(const AmbiguitySet& set, const RealFunction& f) {
  const Expectation upper =
      upperExpectation(set, [&f](double x) { return -f(x); });
  // + 0.0 turns -0 into +0.
  return {-upper.value + 0.0, upper.law};
}

std::vector<std::size_t> argmaxLaws(const AmbiguitySet& set,
                                    const RealFunction& f, double tolerance) {
  const auto values = lawExpectations(set, f);
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> winners;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= best - tolerance) winners.push_back(i);
  }
  return winners;
}

CapacityPair capacityPair(const AmbiguitySet& set, const Predicate& event) {
  const RealFunction indicator = [&event](double x) {
    return event(x) ? 1.0 : 0.0;
  };
  return {upperExpectation(set, indicator).value,
          lowerExpectation(set, indicator).value};
}

MomentEnvelope momentEnvelope(const AmbiguitySet& set) {
  const RealFunction identity = [](double x) { return x; };
  const RealFunction square = [](double x) { return x * x; };
  return {lowerExpectation(set, identity).value,
          upperExpectation(set, identity).value,
          lowerExpectation(set, square).value,
          upperExpectation(set, square).value};
}

}  // namespace gexlab
