#pragma once

// Finite ambiguity sets of lattice-supported laws and the sublinear
// expectation they generate: E[f] = max over laws of the linear expectation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gexlab {

using RealFunction = std::function<double(double)>;
using Predicate = std::function<bool(double)>;

/// Probability tolerance used when validating laws.
inline constexpr double kProbabilityTolerance = 1e-12;

struct Atom {
  std::int64_t index;  ///< lattice index k; the support point is k * step
  double probability;
};

/// One prior law: finite support on the lattice step * Z.
class DiscreteDistribution {
 public:
  /// Throws ConstructionError unless step > 0, the atom list is non-empty
  /// with strictly increasing indices, all probabilities are non-negative
  /// and they sum to one within kProbabilityTolerance. No renormalization.
  DiscreteDistribution(double step, std::vector<Atom> atoms);

  double step() const noexcept { return step_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double point(std::size_t j) const noexcept {
    return static_cast<double>(atoms_[j].index) * step_;
  }
  std::int64_t minIndex() const noexcept { return atoms_.front().index; }
  std::int64_t maxIndex() const noexcept { return atoms_.back().index; }

  /// Classical expectation sum_j p_j f(k_j * step).
  double expectation(const RealFunction& f) const;
  double mean() const;

  /// Symmetric two-point law at +-k*step with probability 1/2 each.
  static DiscreteDistribution symmetricPair(double step, std::int64_t k);
  static DiscreteDistribution pointMass(double step, std::int64_t k);

 private:
  double step_;
  std::vector<Atom> atoms_;
};

/// The finite family of laws whose upper envelope defines the expectation.
class AmbiguitySet {
 public:
  explicit AmbiguitySet(std::vector<DiscreteDistribution> laws,
                        std::vector<std::string> labels = {});

  double step() const noexcept { return laws_.front().step(); }
  std::size_t size() const noexcept { return laws_.size(); }
  std::span<const DiscreteDistribution> laws() const noexcept { return laws_; }
  const DiscreteDistribution& law(std::size_t i) const { return laws_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::int64_t minIndex() const noexcept { return minIndex_; }
  std::int64_t maxIndex() const noexcept { return maxIndex_; }
  /// max |k| over every atom of every law.
  std::int64_t maxAbsIndex() const noexcept;
  /// Sorted distinct lattice indices charged by at least one law.
  std::vector<std::int64_t> unionSupport() const;

 private:
  std::vector<DiscreteDistribution> laws_;
  std::vector<std::string> labels_;
  std::int64_t minIndex_;
  std::int64_t maxIndex_;
};

struct Expectation {
  double value;
  std::size_t law;  ///< extremal law; ties go to the lowest index
};

struct CapacityPair {
  double upper;  ///< V(A)
  double lower;  ///< v(A)
};

struct MomentEnvelope {
  double meanLower;
  double meanUpper;
  double varLower;  ///< lower second raw moment
  double varUpper;  ///< upper second raw moment
};

/// Linear expectation of f under each law, in law order.
std::vector<double> lawExpectations(const AmbiguitySet& set,
                                    const RealFunction& f);

Expectation upperExpectation(const AmbiguitySet& set, const RealFunction& f);

/// Computed as -upperExpectation(set, -f); the reported law is the minimizer.
Expectation lowerExpectation(const AmbiguitySet& set, const RealFunction& f);

/// All laws whose expectation is within `tolerance` of the maximum.
std::vector<std::size_t> argmaxLaws(const AmbiguitySet& set,
                                    const RealFunction& f, double tolerance);

CapacityPair capacityPair(const AmbiguitySet& set, const Predicate& event);

MomentEnvelope momentEnvelope(const AmbiguitySet& set);

}  // namespace gexlab
