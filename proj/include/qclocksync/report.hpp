#pragma once

// JSON and CSV serialization of harness reports.
//
// The JSON layout is documented in README.md. Doubles are written in their
// shortest round-trip form, so parse(serialize(r)) == r and identical reports
// serialize to identical bytes.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qclocksync/harness.hpp"

namespace qcs::harness {

inline constexpr int kReportVersion = 1;

nlohmann::ordered_json to_json(const Report& report);
/// Throws ConfigError when a required member is missing or malformed.
Report report_from_json(const nlohmann::ordered_json& j);

std::string serialize_report(const Report& report);
Report parse_report(const std::string& text);

/// Header plus one row per trial: trial,j,omega_delta_hat,delta_hat,success,qubit_messages.
std::string csv_rows(const Report& report);

/// One-line human summary.
std::string summary_line(const Report& report);

/// Writes the JSON report (and the CSV when csv_path is set), then prints the
/// summary line to `summary`. Throws IoError naming the path on failure.
void emit_report(const Report& report, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& csv_path, std::ostream& summary);

/// Reads a report file written by emit_report. Throws IoError / ConfigError.
Report load_report(const std::filesystem::path& path);

}  // namespace qcs::harness
