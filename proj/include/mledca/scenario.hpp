#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mledca {

/// Thrown for configurations that cannot be analyzed (bad assignment index,
/// malformed config file, invariant violations surfaced at a hard boundary).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// PHY/MAC timing profile shared by every AC on every link.
/// Durations in microseconds, rates in bits per microsecond (== Mbps),
/// frame lengths in bits.
struct PhyProfile {
    double slot_us = 20.0;        // sigma
    double delta_us = 10.0;       // lattice step of the delay generating functions
    double sifs_us = 10.0;
    double phy_header_us = 192.0;
    double data_rate = 11.0;
    double ctrl_rate = 1.0;
    double rts_bits = 160.0;
    double cts_bits = 112.0;
    double ack_bits = 112.0;
    double mac_header_bits = 224.0;
};

/// The 802.11b-era profile used throughout the evaluation (20 us slots, 10 us lattice).
PhyProfile table_i_phy();

/// Per-AC EDCA tunables, saturated workload and QoS target.
struct AcEdcaConfig {
    std::string name;
    int cw_min = 32;               // window size at backoff stage 0
    int cw_max = 1024;             // window size cap
    int aifsn = 2;
    int txop_us = 0;
    int retry_limit = 7;           // R: attempts before a packet is dropped
    int n_stations = 1;
    double payload_bits = 8000.0;
    double delay_bound_ms = 100.0;
    double violation_threshold = 1.0;  // epsilon; 1 means "no delay constraint"

    /// log2(cw_max / cw_min); only meaningful once validate() passed.
    int max_backoff_stage() const;
};

/// The ACs that contend on one link.
struct LinkScenario {
    PhyProfile phy;
    std::vector<AcEdcaConfig> acs;
};

/// Every AC of the BSS together with its link assignment (1-based link ids).
struct MloScenario {
    PhyProfile phy;
    int num_links = 1;
    std::vector<AcEdcaConfig> all_acs;
    std::vector<int> assignment;
};

/// One violated invariant. `path` names the field ("acs[2].txop_us").
struct Violation {
    std::string path;
    std::string message;
};

std::vector<Violation> validate(const PhyProfile& phy);
std::vector<Violation> validate(const AcEdcaConfig& ac, const std::string& path = "ac");
std::vector<Violation> validate(const LinkScenario& link);
std::vector<Violation> validate(const MloScenario& mlo);

/// Joins violations into one human readable block, one per line.
std::string format_violations(const std::vector<Violation>& violations);

/// AIFS = SIFS + AIFSN * slot, in microseconds.
double aifs_of(const AcEdcaConfig& ac, const PhyProfile& phy);

/// One link of an MLO scenario: the link scenario plus, for each of its ACs,
/// the index of that AC in MloScenario::all_acs.
struct LinkPartition {
    int link_id = 0;
    LinkScenario scenario;
    std::vector<std::size_t> ac_indices;

    bool empty() const { return scenario.acs.empty(); }
};

/// Partitions the ACs by their assigned link. Always returns num_links entries,
/// possibly empty. Throws ConfigError for an assignment outside 1..M.
std::vector<LinkPartition> split_links(const MloScenario& mlo);

/// Convenience: an MLO scenario with a single link carrying every AC.
MloScenario single_link(const LinkScenario& link);

}  // namespace mledca
