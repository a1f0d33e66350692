#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "genhilbert/config.hpp"

namespace genhilbert {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_config = 2,
    exit_not_well_defined = 3,
    exit_numeric_failure = 4,
};

struct ReportDocument {
    nlohmann::ordered_json json;
    std::vector<std::filesystem::path> files;  // report.json first, then CSV outputs
    int exit_code = exit_ok;
};

// Runs the configured tasks, writes report.json and the CSV files into cfg.output_dir.
// Not-well-defined outcomes and numeric failures are recorded in the report and the
// exit code; configuration errors propagate as ConfigError.
ReportDocument run(const RunConfig& cfg);

// %.17g, with inf/nan spelled out.
std::string format_number(double x);

void write_csv(const std::filesystem::path& path, const std::string& x_name,
               const std::string& y_name, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace genhilbert
