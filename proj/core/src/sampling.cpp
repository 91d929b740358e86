#include "gexlab/sampling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "gexlab/errors.hpp"

namespace gexlab {

namespace {

// Fisher-Yates driven by Rng::integer so the draw order is portable.
std::vector<std::int64_t> drawDistinct(Rng& rng, std::vector<std::int64_t> pool,
                                       std::size_t count) {
  for (std::size_t i = 0; i < count && i + 1 < pool.size(); ++i) {
    const auto j = static_cast<std::size_t>(
        rng.integer(static_cast<std::int64_t>(i),
                    static_cast<std::int64_t>(pool.size() - 1)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(std::min(count, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> values;
  for (std::int64_t k = lo; k <= hi; ++k) values.push_back(k);
  return values;
}

DiscreteDistribution randomLaw(Rng& rng, double step,
                               const RandomSetOptions& options) {
  const std::int64_t radius = options.indexRadius;
  const auto cap = std::min<std::size_t>(options.maxAtoms,
                                         static_cast<std::size_t>(2 * radius + 1));
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(cap)));
  const auto indices = drawDistinct(rng, range(-radius, radius), count);
  std::vector<double> weights(indices.size());
  for (auto& w : weights) w = rng.uniform(0.05, 1.0);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    atoms.push_back({indices[j], weights[j] / total});
  }
  return DiscreteDistribution(step, std::move(atoms));
}

// Mixture of mean-zero two-point laws on {-a, b} (a, b > 0), optionally
// with an atom at zero; the mean vanishes up to rounding.
DiscreteDistribution randomMeanZeroLaw(Rng& rng, double step,
                                       const RandomSetOptions& options) {
  const std::int64_t radius = std::max<std::int64_t>(options.indexRadius, 1);
  const auto cap = std::min<std::size_t>(options.maxAtoms,
                                         static_cast<std::size_t>(2 * radius + 1));
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(cap)));
  if (count == 1) return DiscreteDistribution::pointMass(step, 0);

  const bool full = count == static_cast<std::size_t>(2 * radius + 1);
  const bool withZero = full || (count >= 3 && rng.uniform() < 0.5);
  const std::size_t sided = count - (withZero ? 1 : 0);
  const auto negatives = static_cast<std::size_t>(rng.integer(
      std::max<std::int64_t>(1, static_cast<std::int64_t>(sided) - radius),
      std::min<std::int64_t>(radius, static_cast<std::int64_t>(sided) - 1)));
  const auto negIdx = drawDistinct(rng, range(1, radius), negatives);
  const auto posIdx = drawDistinct(rng, range(1, radius), sided - negatives);

  std::map<std::int64_t, double> mass;
  double total = 0.0;
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, double>> pairs;
  for (const auto a : negIdx) {
    for (const auto b : posIdx) {
      const double w = rng.uniform(0.05, 1.0);
      pairs.push_back({{a, b}, w});
      total += w;
    }
  }
  double zeroWeight = 0.0;
  if (withZero) {
    zeroWeight = rng.uniform(0.05, 1.0);
    total += zeroWeight;
  }
  for (const auto& [ab, w] : pairs) {
    const auto [a, b] = ab;
    const double span = static_cast<double>(a + b);
    mass[-a] += (w / total) * (static_cast<double>(b) / span);
    mass[b] += (w / total) * (static_cast<double>(a) / span);
  }
  if (withZero) mass[0] += zeroWeight / total;

  std::vector<Atom> atoms;
  for (const auto& [k, p] : mass) atoms.push_back({k, p});
  return DiscreteDistribution(step, std::move(atoms));
}

}  // namespace

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ConfigurationError("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

AmbiguitySet randomAmbiguitySet(Rng& rng, const RandomSetOptions& options) {
  if (options.maxLaws == 0 || options.maxAtoms == 0 || options.indexRadius < 0 ||
      !(options.minStep > 0.0) || options.maxStep < options.minStep) {
    throw ConfigurationError("invalid random set options");
  }
  const double step = rng.uniform(options.minStep, options.maxStep);
  const auto laws = static_cast<std::size_t>(
      rng.integer(1, static_cast<std::int64_t>(options.maxLaws)));
  std::vector<DiscreteDistribution> family;
  family.reserve(laws);
  for (std::size_t i = 0; i < laws; ++i) {
    family.push_back(options.meanZero ? randomMeanZeroLaw(rng, step, options)
                                      : randomLaw(rng, step, options));
  }
  return AmbiguitySet(std::move(family));
}

AmbiguitySet referenceSet() {
  return AmbiguitySet({DiscreteDistribution::symmetricPair(0.5, 2),
                       DiscreteDistribution::symmetricPair(0.5, 1)},
                      {"wide", "narrow"});
}

}  // namespace gexlab
