#pragma once

#include <cstdint>
#include <vector>

#include "mledca/scenario.hpp"

namespace mledca {

struct SimOptions {
    /// Stop once every AC has finished this many contention rounds
    /// (a won TXOP or a drop).
    long packets_per_ac = 100000;
    /// Hard cap on slot boundaries, for starved ACs.
    long long max_boundaries = 2'000'000'000LL;
    std::uint64_t seed = 1;
    bool keep_delays = true;
};

/// Counts for one AC, pooled over its stations.
struct AcSimStats {
    long long attempts = 0;       // RTS transmissions
    long long collisions = 0;     // attempts that collided
    long long idle_slots = 0;     // eligible slot boundaries spent counting down
    long long successes = 0;      // TXOPs won
    long long drops = 0;          // packets discarded after R attempts
    long long packets = 0;        // successes + drops
    std::vector<double> delays_us;

    double p_hat() const;
    double c_hat() const;
    double loss_hat() const;
};

struct SimReport {
    std::uint64_t seed = 0;
    long long boundaries = 0;          // slot opportunities simulated
    double sim_time_us = 0.0;
    std::vector<AcSimStats> acs;       // original AC order
    std::vector<long long> zone_visits;  // per zone, 1-based zone j at index j-1

    std::vector<double> zone_frequencies() const;
};

/// Slot-level discrete-event simulation of one saturated EDCA link with RTS/CTS.
///
/// After every busy period the idle timeline restarts: slot boundary t >= 1
/// lies AIFS_min + (t-1) sigma after the end of the busy period. A station of
/// an AC with AIFS offset h may act at boundaries t >= h+1: it transmits if its
/// counter is zero, otherwise it counts down. Boundaries at which somebody
/// transmits still count down every other eligible station. A won TXOP keeps
/// the channel for RTS + CTS + N * Delta + SIFS; a collision for one RTS.
///
/// Delay samples follow the same accounting as the analytical model: the first
/// packet of a TXOP waits from reaching the head of the line until its DATA
/// frame ends, each follow-up packet adds one Delta.
SimReport simulate(const LinkScenario& link, const SimOptions& options = {});

struct Interval {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    long long trials = 0;
    bool few_samples = false;    // fewer than 100 trials; the interval is only indicative
};

/// Wilson score interval; z = 1.96 for 95 %, 3 for a 3-sigma band. With no
/// successes the upper bound falls back to the rule of three.
Interval wilson(long long successes, long long trials, double z);

/// Fraction of delay samples >= x_us with a 95 % Wilson interval.
Interval empirical_ccdf(const AcSimStats& stats, double x_us);

}  // namespace mledca
