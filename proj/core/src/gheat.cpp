#include "gexlab/gheat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"

namespace gexlab {

namespace {

constexpr double kCflLimit = 0.5;
constexpr double kDefaultCourant = 0.4;

}  // namespace

GParams::GParams(double sigmaLower, double sigmaUpper)
    : lower_(sigmaLower), upper_(sigmaUpper) {
  if (!std::isfinite(lower_) || !std::isfinite(upper_) || !(lower_ >= 0.0) ||
      !(upper_ > 0.0) || lower_ > upper_) {
    throw ConfigurationError("G parameters need 0 <= sigmaLower <= sigmaUpper, "
                             "sigmaUpper > 0 (got " +
                             formatShort(lower_) + ", " + formatShort(upper_) +
                             ")");
  }
}

double gFunction(const GParams& params, double a) noexcept {
  const double hi = params.sigmaUpper();
  const double lo = params.sigmaLower();
  return 0.5 * (hi * hi * std::max(a, 0.0) - lo * lo * std::max(-a, 0.0));
}

void PdeGrid::validate(const GParams& params) const {
  if (!(dx > 0.0) || !(dt > 0.0) || !(horizon > 0.0) || !(xMin < xMax) ||
      !std::isfinite(xMin) || !std::isfinite(xMax)) {
    throw ConfigurationError("PDE grid needs xMin < xMax and dx, dt, horizon > 0");
  }
  const double cells = (xMax - xMin) / dx;
  if (std::abs(cells - std::round(cells)) > 1e-9) {
    throw ConfigurationError("(xMax - xMin) / dx = " + formatShort(cells) +
                             " is not an integer");
  }
  if (std::round(cells) < 2.0) {
    throw ConfigurationError("PDE grid needs at least three nodes");
  }
  const double courant = params.sigmaUpper() * params.sigmaUpper() * dt / (dx * dx);
  if (courant > kCflLimit * (1.0 + 1e-12)) {
    throw ConfigurationError("CFL violated: sigmaUpper^2 dt / dx^2 = " +
                             formatShort(courant) + " > 1/2");
  }
}

std::size_t PdeGrid::nodeCount() const {
  return static_cast<std::size_t>(std::llround((xMax - xMin) / dx)) + 1;
}

double PdeGrid::x(std::size_t i) const {
  const auto cells = static_cast<std::int64_t>(std::llround((xMax - xMin) / dx));
  if (xMin == -xMax && cells % 2 == 0) {
    return static_cast<double>(static_cast<std::int64_t>(i) - cells / 2) * dx;
  }
  return xMin + static_cast<double>(i) * dx;
}

double PdeSolution::valueAt(double x) const {
  const double position = (x - grid.xMin) / grid.dx;
  const double last = static_cast<double>(u.size() - 1);
  if (position < -1e-9 || position > last + 1e-9) {
    throw DomainError("x = " + formatShort(x) + " lies outside the PDE grid");
  }
  const double clamped = std::clamp(position, 0.0, last);
  const auto i = static_cast<std::size_t>(std::floor(clamped));
  if (i + 1 >= u.size()) return u.back();
  const double w = clamped - static_cast<double>(i);
  if (w == 0.0) return u[i];
  return (1.0 - w) * u[i] + w * u[i + 1];
}

PdeSolution solveGHeat(const GParams& params, const RealFunction& phi,
                       const PdeGrid& grid, const SolveOptions& options) {
  grid.validate(params);
  const std::size_t nodes = grid.nodeCount();

  std::vector<double> u(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = grid.x(i);
    u[i] = phi(x);
    if (!std::isfinite(u[i])) {
      throw EvaluationError("initial condition is not finite at x = " +
                            formatShort(x));
    }
  }

  auto steps = static_cast<std::size_t>(std::ceil(grid.horizon / grid.dt - 1e-9));
  steps = std::max<std::size_t>(steps, 1);
  const double lastDt = grid.horizon - static_cast<double>(steps - 1) * grid.dt;
  const double invDx2 = 1.0 / (grid.dx * grid.dx);

  std::vector<double> pending = options.snapshotTimes;
  std::sort(pending.begin(), pending.end());
  PdeSolution solution{grid, {}, 0, {}};
  auto record = [&](double t) {
    while (!pending.empty() && pending.front() <= t + 1e-12) {
      solution.snapshots.push_back({t, u});
      pending.erase(pending.begin());
    }
  };
  record(0.0);

  std::vector<double> next(nodes);
  double t = 0.0;
  for (std::size_t m = 0; m < steps; ++m) {
    const double dt = (m + 1 == steps) ? lastDt : grid.dt;
    next.front() = u.front();
    next.back() = u.back();
    for (std::size_t i = 1; i + 1 < nodes; ++i) {
      // (u[i+1] + u[i-1]) - 2u[i] keeps odd data exactly odd.
      const double d2 = ((u[i + 1] + u[i - 1]) - 2.0 * u[i]) * invDx2;
      next[i] = u[i] + dt * gFunction(params, d2);
      if (!std::isfinite(next[i])) {
        throw DivergenceError("G-heat march diverged at step " +
                                  std::to_string(m + 1) + " (x = " +
                                  formatShort(grid.x(i)) + ")",
                              m + 1);
      }
    }
    u.swap(next);
    t = (m + 1 == steps) ? grid.horizon : t + dt;
    record(t);
  }

  solution.u = std::move(u);
  solution.stepsTaken = steps;
  return solution;
}

PdeGrid gNormalGrid(const GParams& params, const PhiSpec& phi,
                    const GheatAccuracy& accuracy) {
  if (!(accuracy.dx > 0.0) || !std::isfinite(accuracy.dx)) {
    throw ConfigurationError("dx must be positive");
  }
  if (!(accuracy.padFactor >= 4.0)) {
    throw ConfigurationError("padFactor must be >= 4, got " +
                             formatShort(accuracy.padFactor));
  }
  const double sigma = params.sigmaUpper();
  // Faster-growing data feel the truncated boundary more; widen accordingly.
  const double margin =
      sigma * std::max(phi.growthExponent() - 1.0, 0.0) + phi.featureRadius();
  const double half = accuracy.padFactor * sigma + margin;
  const double cells = std::ceil(half / accuracy.dx - 1e-9);
  PdeGrid grid;
  grid.dx = accuracy.dx;
  grid.xMin = -cells * accuracy.dx;
  grid.xMax = cells * accuracy.dx;
  grid.dt = kDefaultCourant * accuracy.dx * accuracy.dx / (sigma * sigma);
  grid.horizon = 1.0;
  return grid;
}

PdeSolution gNormalSolve(const GParams& params, const PhiSpec& phi,
                         const GheatAccuracy& accuracy,
                         const SolveOptions& options) {
  return solveGHeat(params, [&phi](double x) { return phi(x); },
                    gNormalGrid(params, phi, accuracy), options);
}

double gNormalExpectation(const GParams& params, const PhiSpec& phi,
                          const GheatAccuracy& accuracy) {
  const PdeSolution solution = gNormalSolve(params, phi, accuracy);
  // The grid is symmetric, so x = 0 is the middle node.
  return solution.u[solution.u.size() / 2];
}

double gaussianQuadratureOracle(double sigma, const RealFunction& phi) {
  if (!(sigma > 0.0)) {
    throw ConfigurationError("quadrature oracle needs sigma > 0");
  }
  constexpr int kIntervals = 10'000;
  constexpr double kLimit = 10.0;
  constexpr double h = 2.0 * kLimit / kIntervals;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto integrand = [&](int i) {
    const double z = -kLimit + h * i;
    return phi(sigma * z) * norm * std::exp(-0.5 * z * z);
  };
  double sum = integrand(0) + integrand(kIntervals);
  for (int i = 1; i < kIntervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i);
  }
  return sum * h / 3.0;
}

void writeProfileCsv(const std::filesystem::path& path, const PdeGrid& grid,
                     const std::vector<double>& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "x,u\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << formatReal(grid.x(i)) << ',' << formatReal(u[i]) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gexlab
