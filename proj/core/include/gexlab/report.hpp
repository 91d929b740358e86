#pragma once

// Machine-readable reports. Output is byte-stable: fixed field order,
// 17-significant-digit floats, LF line endings.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gexlab/axioms.hpp"
#include "gexlab/experiments.hpp"

namespace gexlab {

enum class ReportFormat { Json, Csv };

/// Throws ConfigurationError for anything but "json" / "csv".
ReportFormat parseReportFormat(std::string_view text);

using CsvCell = std::variant<std::int64_t, double, std::string, bool>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

struct Report {
  nlohmann::ordered_json document;
  CsvTable table;
  bool pass = true;
};

std::string renderJson(const nlohmann::ordered_json& document);
std::string renderCsv(const CsvTable& table);
std::string render(const Report& report, ReportFormat format);

/// Throws IoError when the file cannot be written.
void writeReport(const Report& report, const std::filesystem::path& path,
                 ReportFormat format);

nlohmann::ordered_json toJson(const MomentEnvelope& envelope);
nlohmann::ordered_json toJson(const PhiSpec& phi);

/// CSV columns n,a_n,n_pow_r_half,ratio.
Report toReport(const MomentScanReport& scan);
/// CSV columns n,dpValue,pdeValue,absError.
Report toReport(const CltReport& clt);
Report toReport(const UniformMomentReport& check);
Report toReport(const std::vector<VarianceEntry>& entries);
Report toReport(const AxiomSummary& summary);
Report toReport(const IndependenceScan& scan);
nlohmann::ordered_json toJson(const DualitySummary& duality);

}  // namespace gexlab
