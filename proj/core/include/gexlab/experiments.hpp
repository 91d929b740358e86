#pragma once

// Experiment drivers for the moment bound sup_m E[|S_{m+n} - S_m|^r] <=
// K_r n^{r/2} and the sublinear central limit theorem
// E[phi(S_n / sqrt n)] -> E~[phi(xi)], xi G-normal.

#include <cstdint>
#include <span>
#include <vector>

#include "gexlab/ambiguity.hpp"
#include "gexlab/gheat.hpp"
#include "gexlab/pengsum.hpp"
#include "gexlab/phi.hpp"

namespace gexlab {

inline constexpr double kMeanZeroTolerance = 1e-12;
inline constexpr double kSlopeTolerance = 0.1;

/// Throws HypothesisError listing every law whose mean is not zero.
void requireMeanZero(const AmbiguitySet& set);

struct MomentScanEntry {
  std::int64_t n;
  double value;  ///< a_n = E[|S_n|^r]
};

struct MomentScanReport {
  double r = 0.0;
  std::vector<MomentScanEntry> entries;
  double fittedSlope = 0.0;  ///< log a_n vs log n over the upper half
  double fittedK = 0.0;      ///< max a_n / n^{r/2}
  bool pass = false;         ///< fittedSlope <= r/2 + 0.1
};

/// Least-squares slope of log(value) against log(n) over the upper half of
/// the entries (from index size/2). Throws ConfigurationError for fewer
/// than two points or non-positive values.
double upperHalfLogLogSlope(std::span<const std::int64_t> ns,
                            std::span<const double> values);

/// nList must hold at least four distinct powers of two; r > 2.
MomentScanReport momentScan(const AmbiguitySet& set, double r,
                            std::vector<std::int64_t> nList);

struct VarianceEntry {
  std::int64_t n;
  double lhs;  ///< E[S_n^2]
  double rhs;  ///< n E[X_1^2]
  bool pass;
};

std::vector<VarianceEntry> varianceSubadditivityCheck(const AmbiguitySet& set,
                                                      std::int64_t nMax);

struct CltEntry {
  std::int64_t n;
  double dpValue;
  double absError;
};

struct CltReport {
  PhiSpec phi = PhiSpec::abs();
  MomentEnvelope envelope{};
  double pdeValue = 0.0;
  std::vector<CltEntry> entries;
  bool errorsDecreasing = false;  ///< error at max n <= error at min n
  double finalError = 0.0;
};

CltReport cltConvergence(const AmbiguitySet& set, const PhiSpec& phi,
                         std::vector<std::int64_t> nList,
                         const GheatAccuracy& accuracy = {});

struct UniformMomentReport {
  double p = 0.0;
  std::vector<MomentScanEntry> entries;  ///< b_n = E[|S_n / sqrt n|^{p+1}]
  double maxValue = 0.0;
  double slope = 0.0;
  bool pass = false;  ///< slope <= 0.1
};

UniformMomentReport uniformMomentCheck(const AmbiguitySet& set, double p,
                                       std::vector<std::int64_t> nList);

struct IndependenceEntry {
  double dLow, dHigh;  ///< D = [dLow, dHigh] (empty when dLow > dHigh)
  double gLow, gHigh;  ///< G = [gLow, gHigh]
  IndependenceCheck check;
};

struct IndependenceScan {
  std::vector<double> thresholds;
  std::vector<IndependenceEntry> entries;
  double maxDeviation = 0.0;  ///< over both capacity versions
  bool pass = true;
};

/// Pairwise-independence check for every pair of intervals [t_a, t_b] x
/// [t_c, t_d] with a, b, c, d ranging over the thresholds.
IndependenceScan independenceScan(const AmbiguitySet& setX,
                                  const AmbiguitySet& setY,
                                  std::vector<double> thresholds,
                                  double tolerance = 1e-12);

/// Five thresholds spread evenly over the union support of the set, padded
/// by half a lattice step on each side.
std::vector<double> defaultThresholds(const AmbiguitySet& set);

/// G parameters (sqrt of the lower/upper second moments) of the set.
GParams envelopeParams(const MomentEnvelope& envelope);

}  // namespace gexlab
