#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mledca/analysis.hpp"
#include "mledca/config_io.hpp"
#include "mledca/csv.hpp"
#include "mledca/mc_oracle.hpp"
#include "mledca/optimizer.hpp"

namespace mledca::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kFailed = 1, kConfigError = 2 };

/// Written next to every set of outputs; together with the config file it
/// pins down everything needed to regenerate them.
struct RunManifest {
    std::string subcommand;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    std::vector<std::string> sweeps;
    std::string modes;
    long packets = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp;

    nlohmann::json to_json() const;
};

/// Entry point of the `mledca` executable; returns the process exit code.
int run(int argc, char** argv);

/// Config document with overrides applied, parsed and validated.
/// Throws ConfigError on any problem (violations included in the message).
RunConfig resolve_config(const nlohmann::json& doc);

// analyze

CsvTable analysis_table(const MloScenario& scenario, const std::vector<LinkAnalysis>& links);

/// Log-spaced thresholds from 0.1 ms up to four times the AC's delay bound.
std::vector<long> ccdf_grid(long x_bound, int points = 40);
CsvTable ccdf_table(const LinkScenario& link, const FixedPointSolution& sol, std::size_t ac,
                    const InversionOptions& inversion);

// sensitivity

struct SweepAxis {
    std::string path;
    std::vector<nlohmann::json> values;
};

/// "acs[1].aifsn=2:15:1" (inclusive range) or "acs[1].name=a,b,c" (list).
SweepAxis parse_sweep(const std::string& spec);

/// The AIFSN_2 x TXOP_2 grid of the two-AC sensitivity study.
std::vector<SweepAxis> default_sensitivity_sweep();

/// Cartesian product of the axes, first axis outermost. Points whose
/// config fails validation or whose analysis fails are flagged in `status`.
CsvTable sensitivity_grid(const nlohmann::json& doc, const std::vector<SweepAxis>& axes);

// optimize

CsvTable history_table(const GaResult& result);

struct ComparisonEntry {
    std::string label;
    MloScenario scenario;
    EvalRecord record;
};
CsvTable comparison_table(const std::vector<ComparisonEntry>& entries);

// validate

struct ValidationRow {
    int link_id = 1;
    std::size_t ac_index = 0;
    std::string metric;
    double analytic = 0.0;
    double simulated = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool pass = false;
};

/// Anchors: 10, 50 and 100 ms plus the AC's own delay bound.
std::vector<ValidationRow> validate_link(const LinkScenario& link, const AnalysisOptions& options,
                                         const SimOptions& sim, int link_id,
                                         const std::vector<std::size_t>& ac_indices);
CsvTable validation_table(const std::vector<ValidationRow>& rows);

}  // namespace mledca::cli
