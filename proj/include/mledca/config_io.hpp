#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mledca/analysis.hpp"
#include "mledca/optimizer.hpp"
#include "mledca/scenario.hpp"

namespace mledca {

/// Everything a config file can carry.
///
/// Schema (units in the key names; every section but "acs" is optional):
///   phy:        slot_us, delta_us, sifs_us, phy_header_us, data_rate_mbps,
///               ctrl_rate_mbps, rts_bits, cts_bits, ack_bits, mac_header_bits
///   links:      number of links M (default 1)
///   assignment: link id 1..M per AC (default: all on link 1)
///   acs:        [{name, cw_min, cw_max, aifsn, txop_us, retry_limit, stations,
///                 payload_bytes, dmax_ms, epsilon}]
///   solver:     damping, tolerance, max_iter
///   inversion:  gamma, l, radius, theta_cap
///   ga:         population, generations, crossover, elite, stagnation,
///               mutation_rate, tournament, seed
/// Unknown keys are rejected.
struct RunConfig {
    MloScenario scenario;
    AnalysisOptions analysis;
    GaConfig ga;
};

/// Throws ConfigError for malformed documents and unknown keys. Does not run
/// the scenario invariants; call validate() on the result for that.
RunConfig parse_config(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const AcEdcaConfig& ac);

/// Applies "path=value" to a config document. Paths are dotted keys with
/// 0-based list indices, e.g. "acs[1].aifsn=4" or "solver.damping=0.2".
/// The value is read as JSON when possible, otherwise as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Sets the value at `path`, creating missing objects; list indices must exist.
void set_path(nlohmann::json& doc, const std::string& path, const nlohmann::json& value);

}  // namespace mledca
