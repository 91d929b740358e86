#pragma once

// Batch configuration files (JSON). Every model invariant is checked at
// parse time and each violation is reported with a JSON-pointer path.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gexlab/ambiguity.hpp"
#include "gexlab/errors.hpp"
#include "gexlab/phi.hpp"

namespace gexlab {

struct ExperimentParams {
  std::optional<double> r;
  std::optional<std::vector<std::int64_t>> n;
  std::optional<PhiSpec> phi;
  std::optional<double> dx;
  std::optional<double> padFactor;
  std::optional<double> sigmaLower;
  std::optional<double> sigmaUpper;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> thresholds;
};

struct OutputParams {
  std::optional<std::string> path;
  std::optional<std::string> format;  ///< "json" or "csv"
};

struct Config {
  std::optional<AmbiguitySet> ambiguity;
  /// Second family for independence checks; defaults to `ambiguity`.
  std::optional<AmbiguitySet> ambiguityY;
  ExperimentParams experiment;
  OutputParams output;
};

struct ConfigIssue {
  std::string pointer;  ///< e.g. "/ambiguity/0/atoms/1/p"
  std::string message;
};

class ConfigValidationError : public ValidationError {
 public:
  explicit ConfigValidationError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Throws ParseError (unreadable file or invalid JSON) or
/// ConfigValidationError.
Config parseConfig(const std::filesystem::path& path);
Config parseConfigText(std::string_view text);

}  // namespace gexlab
