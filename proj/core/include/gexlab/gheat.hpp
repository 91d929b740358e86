#pragma once

// Explicit monotone finite-difference solver for the G-heat equation
//   du/dt - G(d2u/dx2) = 0,  u(0, x) = phi(x),
//   G(a) = (sigmaUpper^2 a^+ - sigmaLower^2 a^-) / 2,
// whose solution at (1, 0) is the G-normal expectation of phi.

#include <cstddef>
#include <filesystem>
#include <vector>

#include "gexlab/ambiguity.hpp"
#include "gexlab/phi.hpp"

namespace gexlab {

/// Volatility bounds 0 <= sigmaLower <= sigmaUpper, sigmaUpper > 0.
class GParams {
 public:
  GParams(double sigmaLower, double sigmaUpper);

  double sigmaLower() const noexcept { return lower_; }
  double sigmaUpper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

double gFunction(const GParams& params, double a) noexcept;

struct PdeGrid {
  double xMin;
  double xMax;
  double dx;
  double dt;
  double horizon = 1.0;

  /// Throws ConfigurationError unless the grid is well formed, the node
  /// count is integral within 1e-9 and sigmaUpper^2 dt / dx^2 <= 1/2.
  void validate(const GParams& params) const;
  std::size_t nodeCount() const;
  /// Node coordinate; exactly antisymmetric about 0 when xMin == -xMax.
  double x(std::size_t i) const;
};

struct PdeSnapshot {
  double time;
  std::vector<double> u;
};

struct PdeSolution {
  PdeGrid grid;
  std::vector<double> u;  ///< u(horizon, x_i)
  std::size_t stepsTaken = 0;
  std::vector<PdeSnapshot> snapshots;

  /// Linear interpolation of u(horizon, .) at x inside the grid.
  double valueAt(double x) const;
};

struct SolveOptions {
  /// Times at which u(t, .) is recorded; each snapshot is taken at the first
  /// time level >= the requested time.
  std::vector<double> snapshotTimes;
};

/// Marches ceil(horizon / dt) explicit steps, the last one shortened to land
/// on the horizon. The two boundary nodes use a zero second difference.
/// Throws DivergenceError if a non-finite value appears.
PdeSolution solveGHeat(const GParams& params, const RealFunction& phi,
                       const PdeGrid& grid, const SolveOptions& options = {});

struct GheatAccuracy {
  double dx = 0.05;
  double padFactor = 6.0;
};

/// Symmetric grid [-L, L] with L = padFactor * sigmaUpper + a margin that
/// depends on the catalog entry, dt = 0.4 dx^2 / sigmaUpper^2, horizon 1.
PdeGrid gNormalGrid(const GParams& params, const PhiSpec& phi,
                    const GheatAccuracy& accuracy);

PdeSolution gNormalSolve(const GParams& params, const PhiSpec& phi,
                         const GheatAccuracy& accuracy = {},
                         const SolveOptions& options = {});

/// u(1, 0) on gNormalGrid.
double gNormalExpectation(const GParams& params, const PhiSpec& phi,
                          const GheatAccuracy& accuracy = {});

/// Classical E[phi(sigma Z)], Z ~ N(0,1), by composite Simpson on
/// z in [-10, 10] with 10^4 intervals.
double gaussianQuadratureOracle(double sigma, const RealFunction& phi);

/// CSV with columns x,u.
void writeProfileCsv(const std::filesystem::path& path, const PdeGrid& grid,
                     const std::vector<double>& u);

}  // namespace gexlab
