#include "gexlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"
#include "gexlab/parallel.hpp"
#include "gexlab/pengsum.hpp"

namespace gexlab {

namespace {

std::vector<std::int64_t> normalizedList(std::vector<std::int64_t> nList) {
  std::sort(nList.begin(), nList.end());
  nList.erase(std::unique(nList.begin(), nList.end()), nList.end());
  for (const auto n : nList) {
    if (n < 1 || n > (std::int64_t{1} << 30)) {
      throw ConfigurationError("n values must lie in [1, 2^30], got " +
                               std::to_string(n));
    }
  }
  if (nList.empty()) throw ConfigurationError("empty n list");
  return nList;
}

// Entries for every n, computed in parallel and stored by position.
std::vector<double> evaluateAll(std::span<const std::int64_t> ns,
                                const std::function<double(std::int64_t)>& f) {
  std::vector<double> values(ns.size());
  parallelFor(ns.size(), [&](std::size_t i) { values[i] = f(ns[i]); });
  return values;
}

}  // namespace

void requireMeanZero(const AmbiguitySet& set) {
  std::string offenders;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double mean = set.law(i).mean();
    if (std::abs(mean) > kMeanZeroTolerance) {
      if (!offenders.empty()) offenders += ", ";
      offenders += set.label(i) + " (mean " + formatShort(mean) + ")";
    }
  }
  if (!offenders.empty()) {
    throw HypothesisError(
        "mean-zero hypothesis E[X1] = E[-X1] = 0 fails for: " + offenders);
  }
}

double upperHalfLogLogSlope(std::span<const std::int64_t> ns,
                            std::span<const double> values) {
  if (ns.size() != values.size()) {
    throw ConfigurationError("slope fit needs matching n and value lists");
  }
  const std::size_t first = ns.size() / 2;
  const std::size_t count = ns.size() - first;
  if (count < 2) {
    throw ConfigurationError("slope fit needs at least two points in the upper half");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < ns.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw ConfigurationError("log-log fit needs positive values (n = " +
                               std::to_string(ns[i]) + ")");
    }
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(count);
  const double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) {
    throw ConfigurationError("slope fit needs distinct n values");
  }
  return (m * sxy - sx * sy) / denom;
}

MomentScanReport momentScan(const AmbiguitySet& set, double r,
                            std::vector<std::int64_t> nList) {
  if (!(r > 2.0) || !std::isfinite(r)) {
    throw ConfigurationError("moment order r must exceed 2, got " + formatShort(r));
  }
  requireMeanZero(set);
  nList = normalizedList(std::move(nList));
  if (nList.size() < 4) {
    throw ConfigurationError("moment scan needs at least four n values");
  }
  for (const auto n : nList) {
    if ((n & (n - 1)) != 0) {
      throw ConfigurationError("moment scan n values must be powers of two, got " +
                               std::to_string(n));
    }
  }

  const RealFunction power = [r](double x) { return std::pow(std::abs(x), r); };
  const auto values = evaluateAll(nList, [&](std::int64_t n) {
    return sumExpectation(set, static_cast<int>(n), power);
  });

  MomentScanReport report;
  report.r = r;
  for (std::size_t i = 0; i < nList.size(); ++i) {
    report.entries.push_back({nList[i], values[i]});
    report.fittedK = std::max(
        report.fittedK, values[i] / std::pow(static_cast<double>(nList[i]), r / 2.0));
  }
  report.fittedSlope = upperHalfLogLogSlope(nList, values);
  report.pass = report.fittedSlope <= r / 2.0 + kSlopeTolerance;
  return report;
}

std::vector<VarianceEntry> varianceSubadditivityCheck(const AmbiguitySet& set,
                                                      std::int64_t nMax) {
  requireMeanZero(set);
  if (nMax < 1 || nMax > (std::int64_t{1} << 20)) {
    throw ConfigurationError("nMax must lie in [1, 2^20]");
  }
  const RealFunction square = [](double x) { return x * x; };
  const double second = upperExpectation(set, square).value;
  std::vector<std::int64_t> ns(static_cast<std::size_t>(nMax));
  for (std::int64_t n = 1; n <= nMax; ++n) ns[static_cast<std::size_t>(n - 1)] = n;
  const auto lhs = evaluateAll(ns, [&](std::int64_t n) {
    return sumExpectation(set, static_cast<int>(n), square);
  });
  std::vector<VarianceEntry> entries;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double rhs = static_cast<double>(ns[i]) * second;
    entries.push_back({ns[i], lhs[i], rhs, lhs[i] <= rhs + 1e-9});
  }
  return entries;
}

GParams envelopeParams(const MomentEnvelope& envelope) {
  return GParams(std::sqrt(std::max(envelope.varLower, 0.0)),
                 std::sqrt(std::max(envelope.varUpper, 0.0)));
}

CltReport cltConvergence(const AmbiguitySet& set, const PhiSpec& phi,
                         std::vector<std::int64_t> nList,
                         const GheatAccuracy& accuracy) {
  requireMeanZero(set);
  nList = normalizedList(std::move(nList));

  CltReport report;
  report.phi = phi;
  report.envelope = momentEnvelope(set);
  report.pdeValue = gNormalExpectation(envelopeParams(report.envelope), phi, accuracy);

  const RealFunction f = [&phi](double x) { return phi(x); };
  const auto values = evaluateAll(nList, [&](std::int64_t n) {
    return normalizedSumExpectation(set, static_cast<int>(n), f);
  });
  for (std::size_t i = 0; i < nList.size(); ++i) {
    report.entries.push_back(
        {nList[i], values[i], std::abs(values[i] - report.pdeValue)});
  }
  report.finalError = report.entries.back().absError;
  report.errorsDecreasing = report.finalError <= report.entries.front().absError;
  return report;
}

UniformMomentReport uniformMomentCheck(const AmbiguitySet& set, double p,
                                       std::vector<std::int64_t> nList) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ConfigurationError("growth exponent p must be >= 1, got " + formatShort(p));
  }
  requireMeanZero(set);
  nList = normalizedList(std::move(nList));

  const double order = p + 1.0;
  const RealFunction power = [order](double x) { return std::pow(std::abs(x), order); };
  const auto values = evaluateAll(nList, [&](std::int64_t n) {
    return normalizedSumExpectation(set, static_cast<int>(n), power);
  });

  UniformMomentReport report;
  report.p = p;
  for (std::size_t i = 0; i < nList.size(); ++i) {
    report.entries.push_back({nList[i], values[i]});
    report.maxValue = std::max(report.maxValue, values[i]);
  }
  report.slope = upperHalfLogLogSlope(nList, values);
  report.pass = report.slope <= kSlopeTolerance;
  return report;
}

IndependenceScan independenceScan(const AmbiguitySet& setX,
                                  const AmbiguitySet& setY,
                                  std::vector<double> thresholds,
                                  double tolerance) {
  if (thresholds.empty()) throw ConfigurationError("no thresholds given");
  IndependenceScan scan;
  scan.thresholds = thresholds;
  for (const double dLow : thresholds) {
    for (const double dHigh : thresholds) {
      const auto inD = [dLow, dHigh](double x) { return x >= dLow && x <= dHigh; };
      for (const double gLow : thresholds) {
        for (const double gHigh : thresholds) {
          const auto inG = [gLow, gHigh](double y) { return y >= gLow && y <= gHigh; };
          IndependenceEntry entry{dLow, dHigh, gLow, gHigh,
                                  pairwiseIndependenceCheck(setX, setY, inD, inG,
                                                            tolerance)};
          scan.maxDeviation = std::max(
              {scan.maxDeviation, std::abs(entry.check.joint - entry.check.product),
               std::abs(entry.check.jointLower - entry.check.productLower)});
          scan.pass = scan.pass && entry.check.passed();
          scan.entries.push_back(entry);
        }
      }
    }
  }
  return scan;
}

std::vector<double> defaultThresholds(const AmbiguitySet& set) {
  const double lo = (static_cast<double>(set.minIndex()) - 0.5) * set.step();
  const double hi = (static_cast<double>(set.maxIndex()) + 0.5) * set.step();
  std::vector<double> ts(5);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] = lo + (hi - lo) * static_cast<double>(i) / 4.0;
  }
  return ts;
}

}  // namespace gexlab
