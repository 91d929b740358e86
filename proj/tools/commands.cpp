#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "gexlab/axioms.hpp"
#include "gexlab/experiments.hpp"
#include "gexlab/format.hpp"
#include "gexlab/gheat.hpp"
#include "gexlab/pengsum.hpp"
#include "gexlab/sampling.hpp"

namespace gexlab::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kEnvelopeTolerance = 2e-2;
constexpr double kOracleTolerance = 1e-10;

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& config, T fallback) {
  if (flag) return *flag;
  if (config) return *config;
  return fallback;
}

AmbiguitySet primarySet(const Config& config) {
  return config.ambiguity ? *config.ambiguity : referenceSet();
}

ordered_json describeSet(const AmbiguitySet& set) {
  ordered_json laws = ordered_json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    ordered_json law;
    law["label"] = set.label(i);
    law["step"] = set.step();
    ordered_json atoms = ordered_json::array();
    for (const auto& atom : set.law(i).atoms()) {
      ordered_json a;
      a["k"] = atom.index;
      a["p"] = atom.probability;
      atoms.push_back(std::move(a));
    }
    law["atoms"] = std::move(atoms);
    laws.push_back(std::move(law));
  }
  return laws;
}

// Prepends the command name and the ambiguity set to the report document.
Report decorate(Report report, std::string_view command, const AmbiguitySet& set) {
  ordered_json doc;
  doc["command"] = std::string(command);
  doc["ambiguity"] = describeSet(set);
  for (auto& [key, value] : report.document.items()) doc[key] = value;
  report.document = std::move(doc);
  return report;
}

Report axiomsReport(const Config& config, const Overrides& o) {
  const AmbiguitySet set = primarySet(config);
  const auto trials = pick(o.trials, config.experiment.trials, std::int64_t{200});
  const auto seed = pick(o.seed, config.experiment.seed, std::uint64_t{42});
  if (trials < 1) throw ConfigurationError("--trials must be >= 1");
  const AxiomSummary axioms =
      runAxiomTrials(static_cast<std::size_t>(trials), seed, {}, 1e-12, &set);
  const DualitySummary duality = runDualityTrials(20, 100, seed);
  Report report = toReport(axioms);
  report.document["duality"] = toJson(duality);
  report.document["pass"] = axioms.pass && duality.pass;
  report.pass = axioms.pass && duality.pass;
  return decorate(std::move(report), "axioms", set);
}

Report independenceReport(const Config& config, const Overrides&) {
  const AmbiguitySet setX = primarySet(config);
  const AmbiguitySet setY = config.ambiguityY ? *config.ambiguityY : setX;
  const auto thresholds = config.experiment.thresholds
                              ? *config.experiment.thresholds
                              : defaultThresholds(setX);
  Report report = toReport(independenceScan(setX, setY, thresholds));
  report.document["ambiguityY"] = describeSet(setY);
  return decorate(std::move(report), "independence", setX);
}

Report momentsReport(const Config& config, const Overrides& o) {
  const AmbiguitySet set = primarySet(config);
  const double r = pick(o.r, config.experiment.r, 4.0);
  const auto ns = pick(o.n, config.experiment.n,
                       std::vector<std::int64_t>{4, 8, 16, 32, 64, 128, 256});
  return decorate(toReport(momentScan(set, r, ns)), "moments", set);
}

Report cltReport(const Config& config, const Overrides& o) {
  const AmbiguitySet set = primarySet(config);
  const PhiSpec phi = pick(o.phi, config.experiment.phi, PhiSpec::abs());
  const auto ns =
      pick(o.n, config.experiment.n, std::vector<std::int64_t>{8, 32, 128, 256});
  const GheatAccuracy accuracy{pick(o.dx, config.experiment.dx, 0.05),
                               pick(o.pad, config.experiment.padFactor, 6.0)};
  Report report = toReport(cltConvergence(set, phi, ns, accuracy));
  report.document["dx"] = accuracy.dx;
  report.document["padFactor"] = accuracy.padFactor;
  return decorate(std::move(report), "clt", set);
}

Report gheatReport(const Config& config, const Overrides& o) {
  const AmbiguitySet set = primarySet(config);
  const PhiSpec phi = pick(o.phi, config.experiment.phi, PhiSpec::square());
  std::optional<double> lo = o.sigmaLower ? o.sigmaLower : config.experiment.sigmaLower;
  std::optional<double> hi = o.sigmaUpper ? o.sigmaUpper : config.experiment.sigmaUpper;
  if (!lo || !hi) {
    const MomentEnvelope envelope = momentEnvelope(set);
    if (!lo) lo = std::sqrt(std::max(envelope.varLower, 0.0));
    if (!hi) hi = std::sqrt(std::max(envelope.varUpper, 0.0));
  }
  const GParams params(*lo, *hi);
  const GheatAccuracy accuracy{pick(o.dx, config.experiment.dx, 0.05),
                               pick(o.pad, config.experiment.padFactor, 6.0)};
  const PdeSolution solution = gNormalSolve(params, phi, accuracy);
  const double value = solution.u[solution.u.size() / 2];

  const RealFunction f = [&phi](double x) { return phi(x); };
  auto classical = [&](double sigma) {
    return sigma > 0.0 ? gaussianQuadratureOracle(sigma, f) : phi(0.0);
  };
  const double atLower = classical(params.sigmaLower());
  const double atUpper = classical(params.sigmaUpper());
  bool pass = std::isfinite(value);
  std::optional<double> reference;
  if (phi.convexity() == Convexity::Convex) reference = atUpper;
  if (phi.convexity() == Convexity::Concave) reference = atLower;
  if (reference) pass = pass && std::abs(value - *reference) <= kEnvelopeTolerance;

  Report report;
  report.pass = pass;
  auto& doc = report.document;
  doc["sigmaLower"] = params.sigmaLower();
  doc["sigmaUpper"] = params.sigmaUpper();
  doc["phi"] = toJson(phi);
  ordered_json grid;
  grid["xMin"] = solution.grid.xMin;
  grid["xMax"] = solution.grid.xMax;
  grid["dx"] = solution.grid.dx;
  grid["dt"] = solution.grid.dt;
  grid["horizon"] = solution.grid.horizon;
  doc["grid"] = std::move(grid);
  doc["stepsTaken"] = solution.stepsTaken;
  doc["value"] = value;
  doc["classicalAtSigmaLower"] = atLower;
  doc["classicalAtSigmaUpper"] = atUpper;
  doc["envelopeReference"] = reference ? ordered_json(*reference) : ordered_json(nullptr);
  doc["pass"] = pass;
  report.table.header = {"x", "u"};
  for (std::size_t i = 0; i < solution.u.size(); ++i) {
    report.table.rows.push_back({solution.grid.x(i), solution.u[i]});
  }
  return decorate(std::move(report), "gheat", set);
}

Report oracleReport(const Config& config, const Overrides& o) {
  const AmbiguitySet set = primarySet(config);
  const PhiSpec phi = pick(o.phi, config.experiment.phi, PhiSpec::abs());
  auto ns = pick(o.n, config.experiment.n, std::vector<std::int64_t>{1, 2, 3});
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const RealFunction f = [&phi](double x) { return phi(x); };

  Report report;
  auto& doc = report.document;
  doc["phi"] = toJson(phi);
  doc["entries"] = ordered_json::array();
  report.table.header = {"n", "dpValue", "oracleValue", "absDiff"};
  double worst = 0.0;
  for (const auto n : ns) {
    if (n < 1 || n > 64) throw ConfigurationError("oracle n must lie in [1, 64]");
    const double dp = sumExpectation(set, static_cast<int>(n), f);
    const double brute = bruteForceAdaptedOracle(set, static_cast<int>(n), f);
    const double diff = std::abs(dp - brute);
    worst = std::max(worst, diff);
    ordered_json entry;
    entry["n"] = n;
    entry["dpValue"] = dp;
    entry["oracleValue"] = brute;
    entry["absDiff"] = diff;
    doc["entries"].push_back(std::move(entry));
    report.table.rows.push_back({n, dp, brute, diff});
  }
  report.pass = worst <= kOracleTolerance;
  doc["maxAbsDiff"] = worst;
  doc["tolerance"] = kOracleTolerance;
  doc["pass"] = report.pass;
  return decorate(std::move(report), "oracle", set);
}

}  // namespace

std::vector<std::int64_t> parseIntegerList(std::string_view text) {
  std::vector<std::int64_t> values;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ConfigurationError("invalid integer '" + std::string(item) + "' in list");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

Report buildReport(std::string_view command, const Config& config,
                   const Overrides& overrides) {
  if (command == "axioms") return axiomsReport(config, overrides);
  if (command == "independence") return independenceReport(config, overrides);
  if (command == "moments") return momentsReport(config, overrides);
  if (command == "clt") return cltReport(config, overrides);
  if (command == "gheat") return gheatReport(config, overrides);
  if (command == "oracle") return oracleReport(config, overrides);
  throw ConfigurationError("unknown command '" + std::string(command) + "'");
}

int exitCodeFor(const std::exception& error) noexcept {
  if (dynamic_cast<const ParseError*>(&error)) return kParseError;
  if (dynamic_cast<const ValidationError*>(&error) ||
      dynamic_cast<const HypothesisError*>(&error) ||
      dynamic_cast<const ConfigurationError*>(&error) ||
      dynamic_cast<const ConstructionError*>(&error)) {
    return kValidationError;
  }
  if (dynamic_cast<const IoError*>(&error)) return kIoError;
  return kRuntimeError;
}

int runCommand(std::string_view command, const Config& config,
               const Overrides& overrides, std::ostream& out, std::ostream& err) {
  try {
    const std::string formatText =
        pick(overrides.format, config.output.format, std::string("json"));
    const ReportFormat format = parseReportFormat(formatText);
    const Report report = buildReport(command, config, overrides);
    const auto path = overrides.out ? overrides.out : config.output.path;
    if (path) {
      writeReport(report, *path, format);
    } else {
      out << render(report, format);
    }
    if (!report.pass) {
      err << "gexlab " << command << ": check failed\n";
      return kCheckFailed;
    }
    return kPass;
  } catch (const std::exception& e) {
    err << "gexlab " << command << ": " << e.what() << '\n';
    return exitCodeFor(e);
  }
}

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for sublinear expectations", "gexlab"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string configPath;
  std::string nList;
  std::string phiText;
  Overrides overrides;
  double r = 0, dx = 0, pad = 0, sigmaLo = 0, sigmaHi = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string outPath, format;

  app.add_option("--config", configPath, "JSON configuration file");
  auto* outOpt = app.add_option("--out", outPath, "report path (stdout when omitted)");
  auto* formatOpt = app.add_option("--format", format, "json or csv")
                        ->check(CLI::IsMember({"json", "csv"}));
  auto* rOpt = app.add_option("--r", r, "moment order r > 2");
  auto* nOpt = app.add_option("--n", nList, "comma-separated list of n");
  auto* phiOpt = app.add_option("--phi", phiText, "catalog function NAME[:ARGS]");
  auto* dxOpt = app.add_option("--dx", dx, "PDE space step");
  auto* padOpt = app.add_option("--pad", pad, "PDE domain pad factor (>= 4)");
  auto* loOpt = app.add_option("--sigma-lo", sigmaLo, "lower volatility");
  auto* hiOpt = app.add_option("--sigma-hi", sigmaHi, "upper volatility");
  auto* trialsOpt = app.add_option("--trials", trials, "randomized trial count");
  auto* seedOpt = app.add_option("--seed", seed, "random seed");

  app.add_subcommand("axioms", "randomized sublinear-expectation axiom checks");
  app.add_subcommand("independence", "capacity factorization under independence");
  app.add_subcommand("moments", "moment growth scan E[|S_n|^r] vs n^{r/2}");
  app.add_subcommand("clt", "convergence of E[phi(S_n/sqrt n)] to the G-normal value");
  app.add_subcommand("gheat", "solve the G-heat equation for a catalog phi");
  app.add_subcommand("oracle", "dynamic programming vs brute-force strategy enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*outOpt) overrides.out = outPath;
    if (*formatOpt) overrides.format = format;
    if (*rOpt) overrides.r = r;
    if (*nOpt) overrides.n = parseIntegerList(nList);
    if (*phiOpt) overrides.phi = PhiSpec::parse(phiText);
    if (*dxOpt) overrides.dx = dx;
    if (*padOpt) overrides.pad = pad;
    if (*loOpt) overrides.sigmaLower = sigmaLo;
    if (*hiOpt) overrides.sigmaUpper = sigmaHi;
    if (*trialsOpt) overrides.trials = trials;
    if (*seedOpt) overrides.seed = seed;

    Config config;
    if (!configPath.empty()) config = parseConfig(configPath);
    return runCommand(command, config, overrides, out, err);
  } catch (const std::exception& e) {
    err << "gexlab " << command << ": " << e.what() << '\n';
    return exitCodeFor(e);
  }
}

}  // namespace gexlab::cli
