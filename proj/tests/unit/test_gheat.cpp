#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "gexlab/errors.hpp"
#include "gexlab/gheat.hpp"

using namespace gexlab;

namespace {

PdeGrid smallGrid(const GParams& g, double halfWidth = 4.0, double dx = 0.1) {
  return {-halfWidth, halfWidth, dx, 0.4 * dx * dx / (g.sigmaUpper() * g.sigmaUpper()), 1.0};
}

}  // namespace

TEST_SUITE("gheat") {
  TEST_CASE("G function") {
    const GParams g(0.5, 1.0);
    CHECK(gFunction(g, 2.0) == 1.0);
    CHECK(gFunction(g, -2.0) == -0.25);
    CHECK(gFunction(g, 0.0) == 0.0);
    CHECK_THROWS_AS(GParams(1.0, 0.5), ConfigurationError);
    CHECK_THROWS_AS(GParams(-0.1, 0.5), ConfigurationError);
    CHECK_THROWS_AS(GParams(0.0, 0.0), ConfigurationError);
    CHECK_NOTHROW(GParams(0.0, 1.0));
  }

  TEST_CASE("grid validation") {
    const GParams g(0.5, 1.0);
    PdeGrid grid{-1.0, 1.0, 0.1, 0.005, 1.0};
    CHECK_NOTHROW(grid.validate(g));
    CHECK(grid.nodeCount() == 21);
    CHECK(grid.x(10) == 0.0);
    for (std::size_t i = 0; i < 21; ++i) CHECK(grid.x(i) == -grid.x(20 - i));

    grid.dt = 0.006;  // 0.6 > 1/2
    CHECK_THROWS_WITH_AS(grid.validate(g), doctest::Contains("CFL"), ConfigurationError);
    CHECK_THROWS_AS((PdeGrid{-1.0, 1.0, 0.3, 0.001, 1.0}.validate(g)), ConfigurationError);
    CHECK_THROWS_AS((PdeGrid{1.0, -1.0, 0.1, 0.001, 1.0}.validate(g)), ConfigurationError);
    CHECK_THROWS_AS((PdeGrid{-0.1, 0.1, 0.2, 0.001, 1.0}.validate(g)), ConfigurationError);
  }

  TEST_CASE("constants and affine data are preserved") {
    const GParams g(0.3, 1.2);
    const auto grid = smallGrid(g);
    for (const double v : solveGHeat(g, [](double) { return -3.25; }, grid).u) CHECK(v == -3.25);
    const auto lin = solveGHeat(g, [](double x) { return 2.0 * x + 1.0; }, grid);
    for (std::size_t i = 0; i < grid.nodeCount(); ++i) {
      CHECK(lin.u[i] == doctest::Approx(2.0 * grid.x(i) + 1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("quadratic data: u = x^2 + sigma^2 t away from the boundary") {
    const GParams g(0.5, 1.0);
    const auto grid = smallGrid(g, 8.0);
    const auto up = solveGHeat(g, [](double x) { return x * x; }, grid);
    CHECK(up.valueAt(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(up.valueAt(1.5) == doctest::Approx(3.25).epsilon(1e-10));
    const auto down = solveGHeat(g, [](double x) { return -x * x; }, grid);
    CHECK(down.valueAt(0.0) == doctest::Approx(-0.25).epsilon(1e-10));
  }

  TEST_CASE("step count lands exactly on the horizon") {
    const GParams g(1.0, 1.0);
    PdeGrid grid{-5.0, 5.0, 1.0, 0.3, 1.0};
    SolveOptions options;
    options.snapshotTimes = {0.0, 0.5, 1.0};
    const auto s = solveGHeat(g, [](double x) { return x * x; }, grid, options);
    CHECK(s.stepsTaken == 4);
    REQUIRE(s.snapshots.size() == 3);
    CHECK(s.snapshots[0].time == 0.0);
    CHECK(s.snapshots[1].time == doctest::Approx(0.6));
    CHECK(s.snapshots[2].time == 1.0);
    CHECK(s.u[5] == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("comparison principle") {
    const GParams g(0.4, 1.1);
    const auto grid = smallGrid(g);
    const auto lo = solveGHeat(g, [](double x) { return std::min(std::abs(x), 1.0); }, grid);
    const auto hi = solveGHeat(g, [](double x) { return std::abs(x); }, grid);
    for (std::size_t i = 0; i < lo.u.size(); ++i) CHECK(lo.u[i] <= hi.u[i] + 1e-15);
  }

  TEST_CASE("odd data stays odd in the degenerate case") {
    const GParams g(0.8, 0.8);
    const auto s = gNormalSolve(g, PhiSpec::cube());
    const std::size_t n = s.u.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(s.u[i] == -s.u[n - 1 - i]);
    CHECK(s.u[n / 2] == 0.0);
  }

  TEST_CASE("divergence and bad initial data are reported") {
    const GParams g(1.0, 1.0);
    const PdeGrid grid{-3.0, 3.0, 1.0, 0.5, 1.0};
    const RealFunction saw = [](double x) {
      return (static_cast<long>(std::lround(x)) % 2 == 0) ? 1e308 : -1e308;
    };
    CHECK_THROWS_AS(solveGHeat(g, saw, grid), DivergenceError);
    CHECK_THROWS_AS(solveGHeat(g, [](double) { return NAN; }, grid), EvaluationError);
  }

  TEST_CASE("quadrature oracle examples") {
    const auto absF = [](double x) { return std::abs(x); };
    CHECK(gaussianQuadratureOracle(1.0, absF) ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-10));
    CHECK(gaussianQuadratureOracle(0.5, [](double x) { return x * x; }) ==
          doctest::Approx(0.25).epsilon(1e-10));
    CHECK(gaussianQuadratureOracle(2.0, [](double x) { return x * x * x * x; }) ==
          doctest::Approx(48.0).epsilon(1e-10));
    CHECK(gaussianQuadratureOracle(1.0, [](double x) { return x > 0 ? 1.0 : 0.0; }) ==
          doctest::Approx(0.5).epsilon(1e-3));
    CHECK_THROWS_AS(gaussianQuadratureOracle(0.0, absF), ConfigurationError);
  }

  TEST_CASE("degenerate volatility reproduces the classical normal") {
    const GParams g(0.7, 0.7);
    for (const auto& phi : PhiSpec::catalog()) {
      CAPTURE(phi.name());
      const double pde = gNormalExpectation(g, phi);
      const double quad = gaussianQuadratureOracle(0.7, [&](double x) { return phi(x); });
      const double tol = phi.name().rfind("indicator", 0) == 0 ? 2e-2 : 1e-3;
      CHECK(std::abs(pde - quad) <= tol * std::max(1.0, std::abs(quad)));
    }
  }

  TEST_CASE("convex data uses the upper volatility, concave the lower") {
    const GParams g(0.5, 1.0);
    for (const auto& phi : PhiSpec::catalog()) {
      if (phi.convexity() == Convexity::Neither) continue;
      CAPTURE(phi.name());
      const double sigma = phi.convexity() == Convexity::Convex ? 1.0 : 0.5;
      const double quad = gaussianQuadratureOracle(sigma, [&](double x) { return phi(x); });
      CHECK(std::abs(gNormalExpectation(g, phi) - quad) <= 2e-3 * std::max(1.0, std::abs(quad)));
    }
  }

  TEST_CASE("grid helper") {
    const GParams g(0.5, 2.0);
    const auto grid = gNormalGrid(g, PhiSpec::abs(), {0.05, 6.0});
    CHECK(grid.xMin == -grid.xMax);
    CHECK(grid.xMax >= 12.0);
    CHECK(grid.dt == doctest::Approx(0.4 * 0.05 * 0.05 / 4.0));
    CHECK_NOTHROW(grid.validate(g));
    CHECK_THROWS_AS(gNormalGrid(g, PhiSpec::abs(), {0.05, 3.0}), ConfigurationError);
    CHECK_THROWS_AS(gNormalGrid(g, PhiSpec::abs(), {0.0, 6.0}), ConfigurationError);
  }

  TEST_CASE("profile CSV") {
    const auto path = std::filesystem::path(GEXLAB_TEST_TMPDIR) / "profile.csv";
    const PdeGrid grid{-1.0, 1.0, 1.0, 0.5, 1.0};
    writeProfileCsv(path, grid, {1.0, 0.5, 1.0});
    std::ifstream in(path, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.rfind("x,u\n", 0) == 0);
    CHECK(text.find("0,0.5\n") != std::string::npos);
    CHECK_THROWS_AS(writeProfileCsv("/nonexistent-dir/p.csv", grid, {1.0, 0.5, 1.0}), IoError);
  }
}
