#pragma once

#include <utility>

#include "mledca/scenario.hpp"

namespace mledca {

/// Airtime figures of one AC under the RTS/CTS access mechanism. All in microseconds.
struct AcTiming {
    double t_data = 0.0;
    double t_rts = 0.0;
    double t_cts = 0.0;
    double t_ack = 0.0;
    double delta = 0.0;       // one DATA + ACK exchange inside a TXOP, two SIFS included
    int n_txop = 1;           // packets sent per won TXOP
    double t_collision = 0.0; // channel time lost to an RTS collision, AIFS included
    double t_success = 0.0;   // channel time of a successful TXOP, AIFS included
};

/// DATA/RTS/CTS/ACK durations; delta is filled in as well. n_txop and the
/// occupancy times are left at their defaults.
AcTiming frame_times(const AcEdcaConfig& ac, const PhyProfile& phy);

/// Packets per TXOP: floor(TXOP / delta), never below one.
int txop_count(const AcEdcaConfig& ac, const AcTiming& timing);

/// Returns {collision time, success time}.
std::pair<double, double> occupancy_times(const AcEdcaConfig& ac, const AcTiming& timing,
                                          const PhyProfile& phy);

/// All of the above in one go.
AcTiming ac_timing(const AcEdcaConfig& ac, const PhyProfile& phy);

/// Rounds a duration to the nearest whole number of lattice steps (never negative).
int to_lattice(double duration_us, const PhyProfile& phy);

}  // namespace mledca
