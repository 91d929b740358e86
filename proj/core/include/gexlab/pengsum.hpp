#pragma once

// Sublinear expectations of functions of Peng-IID sums. Partial sums of
// lattice variables stay on the lattice, so the backward recursion
//   V_{i-1}(x) = max_theta sum_j p_{theta,j} V_i(x + k_j * step)
// is exact: no interpolation and no boundary condition.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gexlab/ambiguity.hpp"

namespace gexlab {

struct LatticeGrid {
  double step;
  std::int64_t minIndex;
  std::int64_t maxIndex;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(maxIndex - minIndex + 1);
  }
  bool contains(std::int64_t k) const noexcept {
    return k >= minIndex && k <= maxIndex;
  }
  double point(std::int64_t k) const noexcept {
    return static_cast<double>(k) * step;
  }
};

/// Values of a function on every node of a LatticeGrid.
class GridFunction {
 public:
  GridFunction(LatticeGrid grid, std::vector<double> values);

  /// Samples f at every node; throws EvaluationError on non-finite values.
  static GridFunction sample(const LatticeGrid& grid, const RealFunction& f);

  const LatticeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::int64_t k) const;

 private:
  LatticeGrid grid_;
  std::vector<double> values_;
};

/// (Tf)(x) = max over laws of sum_j p_j f(x + k_j step), on the sub-grid
/// where every shift stays inside f's grid. Throws DomainError when that
/// sub-grid is empty.
GridFunction oneStepOperator(const AmbiguitySet& set, const GridFunction& f);

/// Upper expectation of phi(S_n), S_n = X_1 + ... + X_n Peng-IID with the
/// distribution described by `set`.
double sumExpectation(const AmbiguitySet& set, int n, const RealFunction& phi);

/// Upper expectation of phi(S_n / sqrt(n)).
double normalizedSumExpectation(const AmbiguitySet& set, int n,
                                const RealFunction& phi);

/// Upper expectation of phi(S_{m+n} - S_m), computed by a two-dimensional
/// recursion over (S_i, S_i - S_m) that does not use identical distribution
/// to drop the burn-in steps.
double blockSumExpectation(const AmbiguitySet& set, int burnIn, int n,
                           const RealFunction& phi);

/// Classical expectation of phi(S_n) when step i always uses law
/// lawSequence[i] (a non-adaptive strategy).
double fixedStrategyExpectation(const AmbiguitySet& set,
                                std::span<const std::size_t> lawSequence,
                                const RealFunction& phi);

struct OracleOptions {
  /// Maximum number of strategies the enumeration may visit.
  std::uint64_t ceiling = 1'000'000;
  /// Let the law choice depend on the whole history of increments instead
  /// of the current partial sum only.
  bool fullHistory = false;
};

/// Upper bound on the number of adapted strategies the oracle enumerates
/// (saturates at UINT64_MAX).
std::uint64_t oracleStrategyBound(const AmbiguitySet& set, int n,
                                  bool fullHistory);

/// Maximum over every adapted strategy of the classical expectation of
/// phi(S_n), by exhaustive enumeration. Throws CapacityError when
/// oracleStrategyBound exceeds options.ceiling.
double bruteForceAdaptedOracle(const AmbiguitySet& set, int n,
                               const RealFunction& phi,
                               const OracleOptions& options = {});

using BivariateFunction = std::function<double(double, double)>;

/// E[phi(X, Y)] with Y independent of X: the inner supremum over Y's laws is
/// taken pointwise in x, then the outer supremum over X's laws.
double jointExpectation(const AmbiguitySet& setX, const AmbiguitySet& setY,
                        const BivariateFunction& phi);

struct IndependenceCheck {
  double joint;         ///< V(X in D, Y in G)
  double product;       ///< V(X in D) V(Y in G)
  bool pass;
  double jointLower;    ///< v(X in D, Y in G)
  double productLower;  ///< v(X in D) v(Y in G)
  bool passLower;

  bool passed() const noexcept { return pass && passLower; }
};

IndependenceCheck pairwiseIndependenceCheck(const AmbiguitySet& setX,
                                            const AmbiguitySet& setY,
                                            const Predicate& inD,
                                            const Predicate& inG,
                                            double tolerance = 1e-12);

}  // namespace gexlab
