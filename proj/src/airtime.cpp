#include "mledca/airtime.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mledca {

AcTiming frame_times(const AcEdcaConfig& ac, const PhyProfile& phy) {
    AcTiming t;
    t.t_data = phy.phy_header_us + (phy.mac_header_bits + ac.payload_bits) / phy.data_rate;
    t.t_rts = phy.phy_header_us + phy.rts_bits / phy.ctrl_rate;
    t.t_cts = phy.phy_header_us + phy.cts_bits / phy.ctrl_rate;
    t.t_ack = phy.phy_header_us + phy.ack_bits / phy.ctrl_rate;
    t.delta = t.t_data + t.t_ack + 2.0 * phy.sifs_us;
    return t;
}

int txop_count(const AcEdcaConfig& ac, const AcTiming& timing) {
    const double fits = std::floor(static_cast<double>(ac.txop_us) / timing.delta);
    return std::max(static_cast<int>(fits), 1);
}

std::pair<double, double> occupancy_times(const AcEdcaConfig& ac, const AcTiming& timing,
                                          const PhyProfile& phy) {
    const double aifs = aifs_of(ac, phy);
    const double collision = timing.t_rts + aifs;
    const double success = timing.t_rts + timing.t_cts + timing.n_txop * timing.delta +
                           phy.sifs_us + aifs;
    return {collision, success};
}

AcTiming ac_timing(const AcEdcaConfig& ac, const PhyProfile& phy) {
    AcTiming t = frame_times(ac, phy);
    t.n_txop = txop_count(ac, t);
    std::tie(t.t_collision, t.t_success) = occupancy_times(ac, t, phy);
    return t;
}

int to_lattice(double duration_us, const PhyProfile& phy) {
    return std::max(0, static_cast<int>(std::lround(duration_us / phy.delta_us)));
}

}  // namespace mledca
