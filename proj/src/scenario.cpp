#include "mledca/scenario.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace mledca {

namespace {

constexpr int kMaxWindow = 1024;
constexpr int kTxopStepUs = 32;
constexpr int kMaxTxopUs = 8192;

void require_positive(std::vector<Violation>& out, const std::string& path, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        out.push_back({path, "must be strictly positive"});
    }
}

}  // namespace

PhyProfile table_i_phy() { return PhyProfile{}; }

int AcEdcaConfig::max_backoff_stage() const {
    if (cw_min <= 0 || cw_max < cw_min) {
        return 0;
    }
    return std::countr_zero(static_cast<unsigned>(cw_max / cw_min));
}

std::vector<Violation> validate(const PhyProfile& phy) {
    std::vector<Violation> out;
    require_positive(out, "phy.slot_us", phy.slot_us);
    require_positive(out, "phy.delta_us", phy.delta_us);
    require_positive(out, "phy.sifs_us", phy.sifs_us);
    require_positive(out, "phy.phy_header_us", phy.phy_header_us);
    require_positive(out, "phy.data_rate_mbps", phy.data_rate);
    require_positive(out, "phy.ctrl_rate_mbps", phy.ctrl_rate);
    require_positive(out, "phy.rts_bits", phy.rts_bits);
    require_positive(out, "phy.cts_bits", phy.cts_bits);
    require_positive(out, "phy.ack_bits", phy.ack_bits);
    require_positive(out, "phy.mac_header_bits", phy.mac_header_bits);
    if (phy.slot_us > 0.0 && phy.delta_us > 0.0) {
        const double ratio = phy.slot_us / phy.delta_us;
        if (std::abs(ratio - std::round(ratio)) > 1e-9) {
            out.push_back({"phy.delta_us", "lattice step must divide the slot time evenly"});
        }
    }
    return out;
}

std::vector<Violation> validate(const AcEdcaConfig& ac, const std::string& path) {
    std::vector<Violation> out;
    // CW_min = 1 makes the stage-0 window degenerate (f - 1 = 0) and the
    // transmission-probability expression undefined at c = 0.
    if (ac.cw_min < 2) {
        out.push_back({path + ".cw_min", "CW_min must be at least 2"});
    }
    if (ac.cw_max > kMaxWindow) {
        out.push_back({path + ".cw_max", "CW_max must not exceed 1024"});
    }
    if (ac.cw_max < ac.cw_min) {
        out.push_back({path + ".cw_max", "CW_max must not be smaller than CW_min"});
    } else if (ac.cw_min >= 1) {
        if (ac.cw_max % ac.cw_min != 0 ||
            !std::has_single_bit(static_cast<unsigned>(ac.cw_max / ac.cw_min))) {
            out.push_back({path + ".cw_max", "CW ratio not power of two"});
        }
    }
    if (ac.aifsn < 2 || ac.aifsn > 15) {
        out.push_back({path + ".aifsn", "AIFSN must lie in 2..15"});
    }
    if (ac.txop_us < 0 || ac.txop_us > kMaxTxopUs) {
        out.push_back({path + ".txop_us", "TXOP must lie in 0..8192 us"});
    }
    if (ac.txop_us % kTxopStepUs != 0) {
        out.push_back({path + ".txop_us", "TXOP not multiple of 32 us"});
    }
    if (ac.retry_limit < 4 || ac.retry_limit > 7) {
        out.push_back({path + ".retry_limit", "retry limit must lie in 4..7"});
    }
    if (ac.n_stations < 1) {
        out.push_back({path + ".stations", "at least one station required"});
    }
    if (!(ac.payload_bits >= 0.0) || !std::isfinite(ac.payload_bits)) {
        out.push_back({path + ".payload_bytes", "payload must be non-negative"});
    }
    if (!(ac.delay_bound_ms > 0.0) || !std::isfinite(ac.delay_bound_ms)) {
        out.push_back({path + ".dmax_ms", "delay bound must be strictly positive"});
    }
    if (!(ac.violation_threshold > 0.0 && ac.violation_threshold <= 1.0)) {
        out.push_back({path + ".epsilon", "epsilon must lie in (0, 1]"});
    }
    return out;
}

std::vector<Violation> validate(const LinkScenario& link) {
    auto out = validate(link.phy);
    if (link.acs.empty()) {
        out.push_back({"acs", "a link needs at least one active AC"});
    }
    for (std::size_t i = 0; i < link.acs.size(); ++i) {
        auto v = validate(link.acs[i], "acs[" + std::to_string(i) + "]");
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<Violation> validate(const MloScenario& mlo) {
    auto out = validate(mlo.phy);
    if (mlo.num_links < 1) {
        out.push_back({"links", "at least one link required"});
    }
    if (mlo.all_acs.empty()) {
        out.push_back({"acs", "at least one AC required"});
    }
    if (mlo.assignment.size() != mlo.all_acs.size()) {
        out.push_back({"assignment", "one link id per AC required (got " +
                                         std::to_string(mlo.assignment.size()) + " for " +
                                         std::to_string(mlo.all_acs.size()) + " ACs)"});
    }
    for (std::size_t i = 0; i < mlo.assignment.size(); ++i) {
        const int m = mlo.assignment[i];
        if (m < 1 || m > mlo.num_links) {
            out.push_back({"assignment[" + std::to_string(i) + "]",
                           "link id " + std::to_string(m) + " outside 1.." +
                               std::to_string(mlo.num_links)});
        }
    }
    for (std::size_t i = 0; i < mlo.all_acs.size(); ++i) {
        auto v = validate(mlo.all_acs[i], "acs[" + std::to_string(i) + "]");
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.path << ": " << v.message << '\n';
    }
    return os.str();
}

double aifs_of(const AcEdcaConfig& ac, const PhyProfile& phy) {
    return phy.sifs_us + ac.aifsn * phy.slot_us;
}

std::vector<LinkPartition> split_links(const MloScenario& mlo) {
    if (mlo.num_links < 1) {
        throw ConfigError("split_links: at least one link required");
    }
    if (mlo.assignment.size() != mlo.all_acs.size()) {
        throw ConfigError("split_links: assignment length does not match AC count");
    }
    std::vector<LinkPartition> links(static_cast<std::size_t>(mlo.num_links));
    for (int m = 0; m < mlo.num_links; ++m) {
        links[m].link_id = m + 1;
        links[m].scenario.phy = mlo.phy;
    }
    for (std::size_t i = 0; i < mlo.all_acs.size(); ++i) {
        const int m = mlo.assignment[i];
        if (m < 1 || m > mlo.num_links) {
            throw ConfigError("split_links: AC " + std::to_string(i) + " assigned to link " +
                              std::to_string(m) + ", outside 1.." +
                              std::to_string(mlo.num_links));
        }
        auto& part = links[static_cast<std::size_t>(m - 1)];
        part.scenario.acs.push_back(mlo.all_acs[i]);
        part.ac_indices.push_back(i);
    }
    return links;
}

MloScenario single_link(const LinkScenario& link) {
    MloScenario mlo;
    mlo.phy = link.phy;
    mlo.num_links = 1;
    mlo.all_acs = link.acs;
    mlo.assignment.assign(link.acs.size(), 1);
    return mlo;
}

}  // namespace mledca
