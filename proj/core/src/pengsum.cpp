#include "gexlab/pengsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"

namespace gexlab {

namespace {

constexpr std::int64_t kMaxGridNodes = std::int64_t{1} << 26;

void requirePositive(int n) {
  if (n < 1) {
    throw ConfigurationError("number of summands must be >= 1, got " +
                             std::to_string(n));
  }
}

void requireSameStep(double a, double b) {
  if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
    throw DomainError("grid step " + formatShort(a) +
                      " does not match the ambiguity set step " +
                      formatShort(b));
  }
}

// n * K with overflow and allocation checks.
std::int64_t reachRadius(const AmbiguitySet& set, int n) {
  const std::int64_t k = set.maxAbsIndex();
  if (k != 0 && n > kMaxGridNodes / (2 * k)) {
    throw SizeError("reachable lattice for n = " + std::to_string(n) +
                    " with max |index| " + std::to_string(k) +
                    " exceeds the grid size limit");
  }
  return static_cast<std::int64_t>(n) * k;
}

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturatingPow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    result = saturatingMul(result, base);
    if (result == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return result;
}

// Exhaustive enumeration of adapted strategies. A state is the information
// the strategy may condition on: the partial sum, or the full increment
// history. Only states reached with positive probability need a decision.
class StrategyEnumerator {
 public:
  StrategyEnumerator(const AmbiguitySet& set, int n, const RealFunction& phi,
                     bool fullHistory)
      : set_(set), n_(n), fullHistory_(fullHistory) {
    radius_ = reachRadius(set, n);
    const LatticeGrid grid{set.step(), -radius_, radius_};
    terminal_ = GridFunction::sample(grid, phi);
  }

  double run() {
    Distribution start;
    start.emplace(fullHistory_ ? Key{} : Key{0}, StateMass{0, 1.0});
    return visit(1, start);
  }

  std::uint64_t leaves() const noexcept { return leaves_; }

 private:
  using Key = std::vector<std::int64_t>;
  struct StateMass {
    std::int64_t sum;
    double probability;
  };
  using Distribution = std::map<Key, StateMass>;

  // Odometer over law choices, digit 0 fastest. Returns false on wrap.
  bool advance(std::vector<std::size_t>& choice, std::size_t& changed) const {
    for (std::size_t d = 0; d < choice.size(); ++d) {
      if (++choice[d] < set_.size()) {
        changed = d;
        return true;
      }
      choice[d] = 0;
    }
    return false;
  }

  double visit(int step, const Distribution& dist) {
    std::vector<const Distribution::value_type*> states;
    states.reserve(dist.size());
    for (const auto& entry : dist) states.push_back(&entry);
    const std::size_t laws = set_.size();
    std::vector<std::size_t> choice(states.size(), 0);
    double best = -std::numeric_limits<double>::infinity();

    if (step == n_) {
      // contribution[s][law] = P(state s) * E_law[phi(sum_s + X)]
      std::vector<double> contribution(states.size() * laws);
      for (std::size_t s = 0; s < states.size(); ++s) {
        const StateMass& mass = states[s]->second;
        for (std::size_t l = 0; l < laws; ++l) {
          double e = 0.0;
          for (const auto& atom : set_.law(l).atoms()) {
            e += atom.probability * terminal_.at(mass.sum + atom.index);
          }
          contribution[s * laws + l] = mass.probability * e;
        }
      }
      // partial[d] = sum of contributions of digits d..S-1 (top-down order)
      const std::size_t count = states.size();
      std::vector<double> partial(count + 1, 0.0);
      auto refresh = [&](std::size_t from) {
        for (std::size_t d = from + 1; d-- > 0;) {
          partial[d] = partial[d + 1] + contribution[d * laws + choice[d]];
        }
      };
      refresh(count - 1);
      std::size_t changed = 0;
      do {
        ++leaves_;
        best = std::max(best, partial[0]);
        if (!advance(choice, changed)) break;
        refresh(changed);
      } while (true);
      return best;
    }

    std::size_t changed = 0;
    do {
      Distribution next;
      for (std::size_t s = 0; s < states.size(); ++s) {
        const Key& key = states[s]->first;
        const StateMass& mass = states[s]->second;
        for (const auto& atom : set_.law(choice[s]).atoms()) {
          if (atom.probability == 0.0) continue;
          const std::int64_t sum = mass.sum + atom.index;
          Key nextKey;
          if (fullHistory_) {
            nextKey = key;
            nextKey.push_back(atom.index);
          } else {
            nextKey = {sum};
          }
          auto [it, inserted] =
              next.emplace(std::move(nextKey), StateMass{sum, 0.0});
          it->second.probability += mass.probability * atom.probability;
        }
      }
      best = std::max(best, visit(step + 1, next));
    } while (advance(choice, changed));
    return best;
  }

  const AmbiguitySet& set_;
  int n_;
  bool fullHistory_;
  std::int64_t radius_ = 0;
  GridFunction terminal_{LatticeGrid{1.0, 0, 0}, {0.0}};
  std::uint64_t leaves_ = 0;
};

}  // namespace

GridFunction::GridFunction(LatticeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (!(grid_.step > 0.0) || grid_.minIndex > grid_.maxIndex) {
    throw ConstructionError("invalid lattice grid");
  }
  if (values_.size() != grid_.size()) {
    throw ConstructionError("grid function has " +
                            std::to_string(values_.size()) +
                            " values for a grid of " +
                            std::to_string(grid_.size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw EvaluationError("grid function value is not finite at x = " +
                            formatShort(grid_.point(grid_.minIndex +
                                                    static_cast<std::int64_t>(i))));
    }
  }
}

GridFunction GridFunction::sample(const LatticeGrid& grid,
                                  const RealFunction& f) {
  if (grid.minIndex > grid.maxIndex) {
    throw ConstructionError("invalid lattice grid");
  }
  if (static_cast<std::int64_t>(grid.maxIndex - grid.minIndex) >= kMaxGridNodes) {
    throw SizeError("grid of " + std::to_string(grid.maxIndex - grid.minIndex + 1) +
                    " nodes exceeds the grid size limit");
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = grid.point(grid.minIndex + static_cast<std::int64_t>(i));
    values[i] = f(x);
    if (!std::isfinite(values[i])) {
      throw EvaluationError("function is not finite at lattice point x = " +
                            formatShort(x));
    }
  }
  return GridFunction(grid, std::move(values));
}

double GridFunction::at(std::int64_t k) const {
  if (!grid_.contains(k)) {
    throw DomainError("lattice index " + std::to_string(k) +
                      " lies outside the grid");
  }
  return values_[static_cast<std::size_t>(k - grid_.minIndex)];
}

GridFunction oneStepOperator(const AmbiguitySet& set, const GridFunction& f) {
  requireSameStep(f.grid().step, set.step());
  const std::int64_t lowShift = std::min<std::int64_t>(set.minIndex(), 0);
  const std::int64_t highShift = std::max<std::int64_t>(set.maxIndex(), 0);
  const LatticeGrid out{f.grid().step, f.grid().minIndex - lowShift,
                        f.grid().maxIndex - highShift};
  if (out.minIndex > out.maxIndex) {
    throw DomainError("grid of " + std::to_string(f.grid().size()) +
                      " nodes is too small: the one-step operator needs a margin of " +
                      std::to_string(highShift - lowShift) +
                      " lattice steps (at least " +
                      std::to_string(highShift - lowShift + 1) + " nodes)");
  }

  const auto in = f.values();
  const std::size_t count = out.size();
  std::vector<double> result(count, -std::numeric_limits<double>::infinity());
  std::vector<double> scratch(count);
  for (const auto& law : set.laws()) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (const auto& atom : law.atoms()) {
      const std::size_t offset =
          static_cast<std::size_t>(out.minIndex + atom.index - f.grid().minIndex);
      for (std::size_t i = 0; i < count; ++i) {
        scratch[i] += atom.probability * in[offset + i];
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      result[i] = std::max(result[i], scratch[i]);
    }
  }
  return GridFunction(out, std::move(result));
}

double sumExpectation(const AmbiguitySet& set, int n, const RealFunction& phi) {
  requirePositive(n);
  const std::int64_t radius = reachRadius(set, n);
  GridFunction value =
      GridFunction::sample(LatticeGrid{set.step(), -radius, radius}, phi);
  for (int i = 0; i < n; ++i) value = oneStepOperator(set, value);
  return value.at(0);
}

double normalizedSumExpectation(const AmbiguitySet& set, int n,
                                const RealFunction& phi) {
  requirePositive(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  return sumExpectation(set, n, [&phi, scale](double x) { return phi(x * scale); });
}

double blockSumExpectation(const AmbiguitySet& set, int burnIn, int n,
                           const RealFunction& phi) {
  requirePositive(n);
  if (burnIn < 0) {
    throw ConfigurationError("burn-in length must be >= 0");
  }
  const int total = burnIn + n;
  const std::int64_t k = set.maxAbsIndex();
  reachRadius(set, total);
  const double h = set.step();

  // Value on (s, b): s in [-iK, iK] running sum, b in [-jK, jK] block sum.
  struct Plane {
    std::int64_t sRadius;
    std::int64_t bRadius;
    std::vector<double> values;
    double& at(std::int64_t s, std::int64_t b) {
      return values[static_cast<std::size_t>((s + sRadius) * (2 * bRadius + 1) +
                                             (b + bRadius))];
    }
  };
  auto blockRadius = [&](int i) {
    return static_cast<std::int64_t>(std::max(0, i - burnIn)) * k;
  };
  auto makePlane = [&](int i) {
    const std::int64_t sr = static_cast<std::int64_t>(i) * k;
    const std::int64_t br = blockRadius(i);
    return Plane{sr, br,
                 std::vector<double>(static_cast<std::size_t>((2 * sr + 1) * (2 * br + 1)))};
  };

  Plane next = makePlane(total);
  for (std::int64_t b = -next.bRadius; b <= next.bRadius; ++b) {
    const double x = static_cast<double>(b) * h;
    const double value = phi(x);
    if (!std::isfinite(value)) {
      throw EvaluationError("function is not finite at lattice point x = " +
                            formatShort(x));
    }
    for (std::int64_t s = -next.sRadius; s <= next.sRadius; ++s) next.at(s, b) = value;
  }
  for (int i = total - 1; i >= 0; --i) {
    Plane current = makePlane(i);
    const bool inBlock = i + 1 > burnIn;
    for (std::int64_t s = -current.sRadius; s <= current.sRadius; ++s) {
      for (std::int64_t b = -current.bRadius; b <= current.bRadius; ++b) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& law : set.laws()) {
          double e = 0.0;
          for (const auto& atom : law.atoms()) {
            e += atom.probability *
                 next.at(s + atom.index, inBlock ? b + atom.index : b);
          }
          best = std::max(best, e);
        }
        current.at(s, b) = best;
      }
    }
    next = std::move(current);
  }
  return next.at(0, 0);
}

double fixedStrategyExpectation(const AmbiguitySet& set,
                                std::span<const std::size_t> lawSequence,
                                const RealFunction& phi) {
  std::map<std::int64_t, double> dist{{0, 1.0}};
  for (const std::size_t l : lawSequence) {
    std::map<std::int64_t, double> next;
    for (const auto& [sum, p] : dist) {
      for (const auto& atom : set.law(l).atoms()) {
        next[sum + atom.index] += p * atom.probability;
      }
    }
    dist = std::move(next);
  }
  double e = 0.0;
  for (const auto& [sum, p] : dist) {
    const double x = static_cast<double>(sum) * set.step();
    const double value = phi(x);
    if (!std::isfinite(value)) {
      throw EvaluationError("function is not finite at lattice point x = " +
                            formatShort(x));
    }
    e += p * value;
  }
  return e;
}

std::uint64_t oracleStrategyBound(const AmbiguitySet& set, int n,
                                  bool fullHistory) {
  requirePositive(n);
  const auto support = set.unionSupport();
  const std::uint64_t laws = set.size();
  std::uint64_t bound = 1;
  if (fullHistory) {
    std::uint64_t histories = 1;
    for (int i = 1; i <= n; ++i) {
      bound = saturatingMul(bound, saturatingPow(laws, histories));
      histories = saturatingMul(histories, support.size());
    }
    return bound;
  }
  std::vector<std::int64_t> reach{0};
  for (int i = 1; i <= n; ++i) {
    bound = saturatingMul(bound, saturatingPow(laws, reach.size()));
    if (i == n) break;
    std::vector<std::int64_t> next;
    next.reserve(reach.size() * support.size());
    for (const auto s : reach) {
      for (const auto k : support) next.push_back(s + k);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    reach = std::move(next);
  }
  return bound;
}

double bruteForceAdaptedOracle(const AmbiguitySet& set, int n,
                               const RealFunction& phi,
                               const OracleOptions& options) {
  const std::uint64_t bound = oracleStrategyBound(set, n, options.fullHistory);
  if (bound > options.ceiling) {
    throw CapacityError("strategy enumeration needs up to " +
                        (bound == std::numeric_limits<std::uint64_t>::max()
                             ? std::string("more than 2^64")
                             : std::to_string(bound)) +
                        " evaluations, above the ceiling of " +
                        std::to_string(options.ceiling) + "; reduce n");
  }
  StrategyEnumerator enumerator(set, n, phi, options.fullHistory);
  return enumerator.run();
}

double jointExpectation(const AmbiguitySet& setX, const AmbiguitySet& setY,
                        const BivariateFunction& phi) {
  std::map<std::int64_t, double> inner;
  auto innerValue = [&](std::int64_t k) {
    auto it = inner.find(k);
    if (it != inner.end()) return it->second;
    const double x = static_cast<double>(k) * setX.step();
    const double value =
        upperExpectation(setY, [&phi, x](double y) { return phi(x, y); }).value;
    inner.emplace(k, value);
    return value;
  };
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& law : setX.laws()) {
    double e = 0.0;
    for (const auto& atom : law.atoms()) {
      e += atom.probability * innerValue(atom.index);
    }
    best = std::max(best, e);
  }
  return best;
}

IndependenceCheck pairwiseIndependenceCheck(const AmbiguitySet& setX,
                                            const AmbiguitySet& setY,
                                            const Predicate& inD,
                                            const Predicate& inG,
                                            double tolerance) {
  const auto indicator = [&](double x, double y) {
    return (inD(x) && inG(y)) ? 1.0 : 0.0;
  };
  const CapacityPair capX = capacityPair(setX, inD);
  const CapacityPair capY = capacityPair(setY, inG);

  IndependenceCheck check{};
  check.joint = jointExpectation(setX, setY, indicator);
  check.product = capX.upper * capY.upper;
  check.pass = std::abs(check.joint - check.product) <= tolerance;
  check.jointLower = -jointExpectation(
      setX, setY, [&](double x, double y) { return -indicator(x, y); }) + 0.0;
  check.productLower = capX.lower * capY.lower;
  check.passLower = std::abs(check.jointLower - check.productLower) <= tolerance;
  return check;
}

}  // namespace gexlab
