#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gexlab/config.hpp"
#include "gexlab/report.hpp"

namespace gexlab::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kValidationError = 3,
  kIoError = 4,
  kRuntimeError = 5,
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> r;
  std::optional<std::vector<std::int64_t>> n;
  std::optional<PhiSpec> phi;
  std::optional<double> dx;
  std::optional<double> pad;
  std::optional<double> sigmaLower;
  std::optional<double> sigmaUpper;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
};

inline constexpr std::string_view kCommands[] = {"axioms", "independence", "moments",
                                                 "clt",    "gheat",        "oracle"};

/// Builds the report for `command`; throws gexlab errors on bad input.
Report buildReport(std::string_view command, const Config& config,
                   const Overrides& overrides);

/// Runs a command, writes its report (to the output path, or `out` when none
/// is configured) and returns the exit code.
int runCommand(std::string_view command, const Config& config,
               const Overrides& overrides, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a command.
int exitCodeFor(const std::exception& error) noexcept;

/// Parses "8,32,128" into integers.
std::vector<std::int64_t> parseIntegerList(std::string_view text);

/// Full command-line entry point.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gexlab::cli
