#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lorentz/app/config.hpp"
#include "lorentz/app/suites.hpp"

namespace lorentz::app {

inline constexpr const char* kToolName = "lorentz_verify";
inline constexpr const char* kToolVersion = "0.1.0";

// Report document; `generated_at` is the only field that varies between
// identical runs.
nlohmann::json make_report(const std::string& command, const RunConfig& config,
                           const std::vector<SuiteResult>& suites);

// Same document without `generated_at`, serialized; used for byte comparison.
std::string canonical_dump(const nlohmann::json& report);

void write_csv(const std::filesystem::path& file, const CsvTable& table);

// Writes report.json and traces/*.csv under dir.
void write_outputs(const std::filesystem::path& dir, const nlohmann::json& report,
                   const std::vector<SuiteResult>& suites);

// Outline curves for the scenario recorded in a report, plus the ray paths
// it references, into out_dir/figures. Throws ConfigInvalid when the report
// or a referenced trace is missing.
std::vector<std::filesystem::path> emit_figures(const std::filesystem::path& reports_dir,
                                                const std::filesystem::path& out_dir);

// Output directory: flag, else LORENTZ_OUT_DIR, else the config value.
std::filesystem::path resolve_output_dir(const std::string& flag, const RunConfig& config);

}  // namespace lorentz::app
