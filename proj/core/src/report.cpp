#include "gexlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gexlab/errors.hpp"
#include "gexlab/format.hpp"

namespace gexlab {

using nlohmann::ordered_json;

std::string formatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  const int length = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(length));
}

std::string formatShort(double value) {
  char buffer[40];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) return formatReal(value);
  return std::string(buffer, end);
}

namespace {

void renderValue(const ordered_json& value, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string closing(static_cast<std::size_t>(2 * depth), ' ');
  switch (value.type()) {
    case ordered_json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += indent + ordered_json(key).dump() + ": ";
        renderValue(item, depth + 1, out);
      }
      out += "\n" + closing + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += indent;
        renderValue(value[i], depth + 1, out);
      }
      out += "\n" + closing + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double x = value.get<double>();
      out += std::isfinite(x) ? formatReal(x) : "null";
      return;
    }
    default:
      out += value.dump();
      return;
  }
}

std::string renderCell(const CsvCell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return formatReal(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (const char c : v) {
            if (c == '"') quoted += '"';
            quoted += c;
          }
          return quoted + "\"";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

ordered_json passFlag(bool pass) { return ordered_json(pass); }

}  // namespace

ReportFormat parseReportFormat(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw ConfigurationError("unknown report format '" + std::string(text) +
                           "' (expected json or csv)");
}

std::string renderJson(const ordered_json& document) {
  std::string out;
  renderValue(document, 0, out);
  out += '\n';
  return out;
}

std::string renderCsv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += renderCell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? renderJson(report.document)
                                      : renderCsv(report.table);
}

void writeReport(const Report& report, const std::filesystem::path& path,
                 ReportFormat format) {
  const std::string text = render(report, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

ordered_json toJson(const MomentEnvelope& envelope) {
  ordered_json j;
  j["meanLower"] = envelope.meanLower;
  j["meanUpper"] = envelope.meanUpper;
  j["varLower"] = envelope.varLower;
  j["varUpper"] = envelope.varUpper;
  return j;
}

ordered_json toJson(const PhiSpec& phi) {
  ordered_json j;
  j["name"] = phi.name();
  j["growthExponent"] = phi.growthExponent();
  j["convexityTag"] = std::string(toString(phi.convexity()));
  return j;
}

Report toReport(const MomentScanReport& scan) {
  Report report;
  report.pass = scan.pass;
  auto& doc = report.document;
  doc["r"] = scan.r;
  doc["entries"] = ordered_json::array();
  report.table.header = {"n", "a_n", "n_pow_r_half", "ratio"};
  for (const auto& e : scan.entries) {
    ordered_json entry;
    entry["n"] = e.n;
    entry["a_n"] = e.value;
    doc["entries"].push_back(std::move(entry));
    const double scale = std::pow(static_cast<double>(e.n), scan.r / 2.0);
    report.table.rows.push_back({e.n, e.value, scale, e.value / scale});
  }
  doc["fittedSlope"] = scan.fittedSlope;
  doc["fittedK"] = scan.fittedK;
  doc["pass"] = passFlag(scan.pass);
  return report;
}

Report toReport(const CltReport& clt) {
  Report report;
  report.pass = clt.errorsDecreasing;
  auto& doc = report.document;
  doc["phi"] = toJson(clt.phi);
  doc["envelope"] = toJson(clt.envelope);
  doc["pdeValue"] = clt.pdeValue;
  doc["entries"] = ordered_json::array();
  report.table.header = {"n", "dpValue", "pdeValue", "absError"};
  for (const auto& e : clt.entries) {
    ordered_json entry;
    entry["n"] = e.n;
    entry["dpValue"] = e.dpValue;
    entry["absError"] = e.absError;
    doc["entries"].push_back(std::move(entry));
    report.table.rows.push_back({e.n, e.dpValue, clt.pdeValue, e.absError});
  }
  doc["errorsDecreasing"] = clt.errorsDecreasing;
  doc["finalError"] = clt.finalError;
  return report;
}

Report toReport(const UniformMomentReport& check) {
  Report report;
  report.pass = check.pass;
  auto& doc = report.document;
  doc["p"] = check.p;
  doc["entries"] = ordered_json::array();
  report.table.header = {"n", "b_n"};
  for (const auto& e : check.entries) {
    ordered_json entry;
    entry["n"] = e.n;
    entry["b_n"] = e.value;
    doc["entries"].push_back(std::move(entry));
    report.table.rows.push_back({e.n, e.value});
  }
  doc["maxValue"] = check.maxValue;
  doc["slope"] = check.slope;
  doc["pass"] = check.pass;
  return report;
}

Report toReport(const std::vector<VarianceEntry>& entries) {
  Report report;
  auto& doc = report.document;
  doc["entries"] = ordered_json::array();
  report.table.header = {"n", "lhs", "rhs", "pass"};
  for (const auto& e : entries) {
    ordered_json entry;
    entry["n"] = e.n;
    entry["lhs"] = e.lhs;
    entry["rhs"] = e.rhs;
    entry["pass"] = e.pass;
    doc["entries"].push_back(std::move(entry));
    report.table.rows.push_back({e.n, e.lhs, e.rhs, e.pass});
    report.pass = report.pass && e.pass;
  }
  doc["pass"] = report.pass;
  return report;
}

Report toReport(const AxiomSummary& summary) {
  Report report;
  report.pass = summary.pass;
  auto& doc = report.document;
  doc["trials"] = summary.trials;
  doc["seed"] = summary.seed;
  doc["tolerance"] = summary.tolerance;
  auto stat = [](const AxiomStatistic& s) {
    ordered_json j;
    j["maxExcess"] = s.maxExcess;
    j["violations"] = s.violations;
    return j;
  };
  doc["monotonicity"] = stat(summary.monotonicity);
  doc["constantPreserving"] = stat(summary.constantPreserving);
  doc["subadditivity"] = stat(summary.subadditivity);
  doc["positiveHomogeneity"] = stat(summary.homogeneity);
  doc["lowerAboveUpper"] = stat(summary.lowerAboveUpper);
  doc["argmaxChanges"] = summary.argmaxChanges;
  doc["pass"] = summary.pass;
  report.table.header = {"trial",         "laws",          "f",
                         "g",             "monotonicity",  "constantPreserving",
                         "subadditivity", "homogeneity",   "argmaxStable"};
  for (const auto& r : summary.records) {
    report.table.rows.push_back({static_cast<std::int64_t>(r.trial),
                                 static_cast<std::int64_t>(r.lawCount), r.f, r.g,
                                 r.excess.monotonicity, r.excess.constantPreserving,
                                 r.excess.subadditivity, r.excess.homogeneity,
                                 r.excess.argmaxStable});
  }
  return report;
}

Report toReport(const IndependenceScan& scan) {
  Report report;
  report.pass = scan.pass;
  auto& doc = report.document;
  doc["thresholds"] = scan.thresholds;
  doc["pairs"] = scan.entries.size();
  std::size_t failures = 0;
  for (const auto& e : scan.entries) failures += e.check.passed() ? 0 : 1;
  doc["failures"] = failures;
  doc["maxDeviation"] = scan.maxDeviation;
  doc["pass"] = scan.pass;
  report.table.header = {"dLow",  "dHigh",      "gLow",         "gHigh", "joint",
                         "product", "jointLower", "productLower", "pass"};
  for (const auto& e : scan.entries) {
    report.table.rows.push_back({e.dLow, e.dHigh, e.gLow, e.gHigh, e.check.joint,
                                 e.check.product, e.check.jointLower,
                                 e.check.productLower, e.check.passed()});
  }
  return report;
}

ordered_json toJson(const DualitySummary& duality) {
  ordered_json j;
  j["checks"] = duality.checks;
  j["maxDeviation"] = duality.maxDeviation;
  j["pass"] = duality.pass;
  return j;
}

}  // namespace gexlab
