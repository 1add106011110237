#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hz/hgroup.hpp"
#include "hz/quadrature.hpp"

namespace hz {

inline constexpr int kReportSchemaVersion = 1;

const std::vector<std::string>& campaign_names();  // group .. reduced, without "all"

struct RunConfig {
    Params params = Params::make(1, 2.0);
    QuadratureSpec quadrature;
    std::vector<std::string> campaigns;
    std::string output_path = "hz_out";
    std::optional<std::string> robin_csv;
};

// thrown for anything the user got wrong in the config or flags (exit code 3)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON run file; unknown keys and type mismatches are reported with the field path
// (and the line for syntax errors)
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// expands "all", removes duplicates, keeps canonical order; throws ConfigError
void normalize_campaigns(RunConfig& cfg);
nlohmann::ordered_json config_echo(const RunConfig& cfg);

enum class Grade { assert_grade, report_grade };

struct Check {
    std::string name;
    Grade grade = Grade::assert_grade;
    double measured = 0.0;
    std::optional<double> reference;
    std::optional<double> tolerance;
    std::string rule;  // how measured, reference and tolerance combine
    bool passed = true;
    std::string note;
};

struct CampaignResult {
    std::string name;
    std::vector<Check> checks;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    std::vector<std::string> kappa_rows;  // csv rows for kappa_table.csv
    std::vector<std::string> decay_rows;  // csv rows for decay_fits.csv
    double seconds = 0.0;
    bool passed() const;
};

CampaignResult run_campaign(const std::string& name, const RunConfig& cfg);

struct Report {
    nlohmann::ordered_json body;     // deterministic part
    nlohmann::ordered_json timings;  // wall clock, excluded from comparisons
    std::vector<std::string> kappa_rows, decay_rows;
    bool all_passed = true;
};

Report run(const RunConfig& cfg);
// report.json (body plus timings), kappa_table.csv, decay_fits.csv
void write_report(const Report& r, const std::string& dir);

inline const char* kKappaHeader = "i,j,mu,kappa_raw,kappa_calibrated";
inline const char* kDecayHeader = "mu,theta,regime,predicted,fitted,fitted_raw,model_residual";

}  // namespace hz
