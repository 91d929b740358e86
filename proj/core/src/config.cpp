#include "gexlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gexlab/format.hpp"

namespace gexlab {

namespace {

using nlohmann::json;

std::string joinIssues(const std::vector<ConfigIssue>& issues) {
  std::string text = "invalid configuration:";
  for (const auto& issue : issues) {
    text += "\n  " + (issue.pointer.empty() ? std::string("/") : issue.pointer) +
            ": " + issue.message;
  }
  return text;
}

class Validator {
 public:
  void fail(const std::string& pointer, std::string message) {
    issues_.push_back({pointer, std::move(message)});
  }
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

  void rejectUnknown(const json& object, const std::string& pointer,
                     std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
      bool known = false;
      for (const auto name : allowed) known = known || key == name;
      if (!known) fail(pointer + "/" + key, "unknown key");
    }
  }

  std::optional<double> number(const json& value, const std::string& pointer) {
    if (!value.is_number()) {
      fail(pointer, "expected a number");
      return std::nullopt;
    }
    const double x = value.get<double>();
    if (!std::isfinite(x)) {
      fail(pointer, "expected a finite number");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::int64_t> integer(const json& value, const std::string& pointer) {
    if (!value.is_number_integer()) {
      fail(pointer, "expected an integer");
      return std::nullopt;
    }
    return value.get<std::int64_t>();
  }

 private:
  std::vector<ConfigIssue> issues_;
};

std::optional<AmbiguitySet> parseFamily(const json& value, const std::string& pointer,
                                        Validator& v) {
  if (!value.is_array() || value.empty()) {
    v.fail(pointer, "expected a non-empty array of laws");
    return std::nullopt;
  }
  std::vector<DiscreteDistribution> laws;
  std::vector<std::string> labels;
  bool ok = true;
  std::optional<double> commonStep;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string lawPtr = pointer + "/" + std::to_string(i);
    const json& law = value[i];
    if (!law.is_object()) {
      v.fail(lawPtr, "expected an object with step and atoms");
      ok = false;
      continue;
    }
    v.rejectUnknown(law, lawPtr, {"label", "step", "atoms"});
    std::string label = "law" + std::to_string(i);
    if (law.contains("label")) {
      if (law["label"].is_string()) {
        label = law["label"].get<std::string>();
      } else {
        v.fail(lawPtr + "/label", "expected a string");
      }
    }
    const std::string named = "law '" + label + "'";

    std::optional<double> step;
    if (!law.contains("step")) {
      v.fail(lawPtr + "/step", "missing");
    } else if ((step = v.number(law["step"], lawPtr + "/step")) && !(*step > 0.0)) {
      v.fail(lawPtr + "/step", "step must be positive in " + named);
      step.reset();
    }
    if (step) {
      if (!commonStep) {
        commonStep = step;
      } else if (std::abs(*step - *commonStep) >
                 1e-12 * std::max(std::abs(*step), std::abs(*commonStep))) {
        v.fail(lawPtr + "/step", "common step violated: " + named + " has step " +
                                     formatShort(*step) + " but law 0 has " +
                                     formatShort(*commonStep));
        step.reset();
        ok = false;
      }
    }

    std::vector<Atom> atoms;
    bool atomsOk = true;
    if (!law.contains("atoms") || !law["atoms"].is_array() || law["atoms"].empty()) {
      v.fail(lawPtr + "/atoms", "expected a non-empty array of {k, p}");
      atomsOk = false;
    } else {
      const json& list = law["atoms"];
      double total = 0.0;
      for (std::size_t j = 0; j < list.size(); ++j) {
        const std::string atomPtr = lawPtr + "/atoms/" + std::to_string(j);
        if (!list[j].is_object()) {
          v.fail(atomPtr, "expected an object {k, p}");
          atomsOk = false;
          continue;
        }
        v.rejectUnknown(list[j], atomPtr, {"k", "p"});
        std::optional<std::int64_t> k;
        std::optional<double> p;
        if (list[j].contains("k")) {
          k = v.integer(list[j]["k"], atomPtr + "/k");
        } else {
          v.fail(atomPtr + "/k", "missing");
        }
        if (list[j].contains("p")) {
          p = v.number(list[j]["p"], atomPtr + "/p");
        } else {
          v.fail(atomPtr + "/p", "missing");
        }
        if (!k || !p) {
          atomsOk = false;
          continue;
        }
        if (*p < 0.0) {
          v.fail(atomPtr + "/p", "negative probability in " + named);
          atomsOk = false;
        }
        if (!atoms.empty() && *k <= atoms.back().index) {
          v.fail(atomPtr + "/k", "lattice indices must be strictly increasing in " + named);
          atomsOk = false;
        }
        atoms.push_back({*k, *p});
        total += *p;
      }
      if (atomsOk && std::abs(total - 1.0) > kProbabilityTolerance) {
        v.fail(lawPtr + "/atoms", "probabilities of " + named + " sum to " +
                                      formatShort(total) + ", expected 1");
        atomsOk = false;
      }
    }
    if (step && atomsOk) {
      laws.emplace_back(*step, std::move(atoms));
      labels.push_back(label);
    } else {
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return AmbiguitySet(std::move(laws), std::move(labels));
}

void parseExperiment(const json& value, const std::string& pointer, Validator& v,
                     ExperimentParams& out) {
  if (!value.is_object()) {
    v.fail(pointer, "expected an object");
    return;
  }
  v.rejectUnknown(value, pointer,
                  {"r", "n", "phi", "dx", "padFactor", "sigmaLower", "sigmaUpper",
                   "trials", "seed", "thresholds"});
  auto positive = [&](const char* key, std::optional<double>& slot, double min,
                      bool strict, const char* rule) {
    if (!value.contains(key)) return;
    const std::string ptr = pointer + "/" + key;
    if (auto x = v.number(value[key], ptr)) {
      if (strict ? !(*x > min) : !(*x >= min)) {
        v.fail(ptr, rule);
      } else {
        slot = x;
      }
    }
  };
  positive("r", out.r, 2.0, true, "moment order r must exceed 2");
  positive("dx", out.dx, 0.0, true, "dx must be positive");
  positive("padFactor", out.padFactor, 4.0, false, "padFactor must be >= 4");
  positive("sigmaLower", out.sigmaLower, 0.0, false, "sigmaLower must be >= 0");
  positive("sigmaUpper", out.sigmaUpper, 0.0, true, "sigmaUpper must be positive");
  if (out.sigmaLower && out.sigmaUpper && *out.sigmaLower > *out.sigmaUpper) {
    v.fail(pointer + "/sigmaLower", "sigmaLower must not exceed sigmaUpper");
  }
  if (value.contains("n")) {
    const std::string ptr = pointer + "/n";
    if (!value["n"].is_array() || value["n"].empty()) {
      v.fail(ptr, "expected a non-empty array of positive integers");
    } else {
      std::vector<std::int64_t> ns;
      bool ok = true;
      for (std::size_t i = 0; i < value["n"].size(); ++i) {
        const std::string itemPtr = ptr + "/" + std::to_string(i);
        auto n = v.integer(value["n"][i], itemPtr);
        if (n && *n < 1) {
          v.fail(itemPtr, "n must be >= 1");
          n.reset();
        }
        if (n) ns.push_back(*n); else ok = false;
      }
      if (ok) out.n = std::move(ns);
    }
  }
  if (value.contains("phi")) {
    const std::string ptr = pointer + "/phi";
    if (!value["phi"].is_string()) {
      v.fail(ptr, "expected a catalog name such as \"abs\" or \"abspow:2.5\"");
    } else {
      try {
        out.phi = PhiSpec::parse(value["phi"].get<std::string>());
      } catch (const ConfigurationError& e) {
        v.fail(ptr, e.what());
      }
    }
  }
  if (value.contains("trials")) {
    const std::string ptr = pointer + "/trials";
    if (auto t = v.integer(value["trials"], ptr)) {
      if (*t < 1) v.fail(ptr, "trials must be >= 1"); else out.trials = t;
    }
  }
  if (value.contains("seed")) {
    const std::string ptr = pointer + "/seed";
    if (!value["seed"].is_number_unsigned()) {
      v.fail(ptr, "expected a non-negative integer");
    } else {
      out.seed = value["seed"].get<std::uint64_t>();
    }
  }
  if (value.contains("thresholds")) {
    const std::string ptr = pointer + "/thresholds";
    if (!value["thresholds"].is_array() || value["thresholds"].empty()) {
      v.fail(ptr, "expected a non-empty array of numbers");
    } else {
      std::vector<double> ts;
      bool ok = true;
      for (std::size_t i = 0; i < value["thresholds"].size(); ++i) {
        const std::string itemPtr = ptr + "/" + std::to_string(i);
        auto t = v.number(value["thresholds"][i], itemPtr);
        if (t && !ts.empty() && *t <= ts.back()) {
          v.fail(itemPtr, "thresholds must be strictly increasing");
          t.reset();
        }
        if (t) ts.push_back(*t); else ok = false;
      }
      if (ok) out.thresholds = std::move(ts);
    }
  }
}

void parseOutput(const json& value, const std::string& pointer, Validator& v,
                 OutputParams& out) {
  if (!value.is_object()) {
    v.fail(pointer, "expected an object");
    return;
  }
  v.rejectUnknown(value, pointer, {"path", "format"});
  if (value.contains("path")) {
    if (value["path"].is_string()) {
      out.path = value["path"].get<std::string>();
    } else {
      v.fail(pointer + "/path", "expected a string");
    }
  }
  if (value.contains("format")) {
    const json& f = value["format"];
    if (!f.is_string() || (f != "json" && f != "csv")) {
      v.fail(pointer + "/format", "expected \"json\" or \"csv\"");
    } else {
      out.format = f.get<std::string>();
    }
  }
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<ConfigIssue> issues)
    : ValidationError(joinIssues(issues)), issues_(std::move(issues)) {}

Config parseConfigText(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Validator v;
  Config config;
  if (!root.is_object()) {
    v.fail("", "top level must be an object");
    throw ConfigValidationError(v.issues());
  }
  v.rejectUnknown(root, "", {"ambiguity", "ambiguityY", "experiment", "output"});
  if (!root.contains("ambiguity")) {
    v.fail("/ambiguity", "missing");
  } else {
    config.ambiguity = parseFamily(root["ambiguity"], "/ambiguity", v);
  }
  if (root.contains("ambiguityY")) {
    config.ambiguityY = parseFamily(root["ambiguityY"], "/ambiguityY", v);
  }
  if (root.contains("experiment")) {
    parseExperiment(root["experiment"], "/experiment", v, config.experiment);
  }
  if (root.contains("output")) {
    parseOutput(root["output"], "/output", v, config.output);
  }
  if (!v.issues().empty()) throw ConfigValidationError(v.issues());
  return config;
}

Config parseConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read configuration file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseConfigText(buffer.str());
}

}  // namespace gexlab
