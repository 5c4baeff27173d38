#pragma once

#include <string>
#include <vector>

#include "mledca/optimizer.hpp"
#include "mledca/scenario.hpp"

namespace fixtures {

inline mledca::AcEdcaConfig ac(int cw_min, int cw_max, int aifsn, int txop_us, int retry,
                               int stations, double payload_bytes = 1000.0) {
    mledca::AcEdcaConfig a;
    a.cw_min = cw_min;
    a.cw_max = cw_max;
    a.aifsn = aifsn;
    a.txop_us = txop_us;
    a.retry_limit = retry;
    a.n_stations = stations;
    a.payload_bits = 8.0 * payload_bytes;
    return a;
}

/// Two identical ACs: CW 32/1024, AIFSN 8, R 7, four stations, 1000 B,
/// 100 ms bound. TXOP 4064 us gives three packets per TXOP.
inline mledca::LinkScenario two_ac_baseline() {
    mledca::LinkScenario link;
    link.phy = mledca::table_i_phy();
    for (int i = 0; i < 2; ++i) {
        auto a = ac(32, 1024, 8, 4064, 7, 4);
        a.name = "AC" + std::to_string(i + 1);
        a.delay_bound_ms = 100.0;
        a.violation_threshold = 0.01;
        link.acs.push_back(a);
    }
    return link;
}

inline mledca::LinkScenario lone_station(int cw_min = 32, int retry = 7) {
    mledca::LinkScenario link;
    link.phy = mledca::table_i_phy();
    auto a = ac(cw_min, 1024, 2, 0, retry, 1);
    a.delay_bound_ms = 10.0;
    a.violation_threshold = 1e-3;
    link.acs.push_back(a);
    return link;
}

/// Five ACs with the evaluation workload and QoS targets, on `links` links.
inline mledca::Problem five_ac_problem(int links = 2) {
    const int n[] = {2, 4, 4, 3, 3};
    const double bytes[] = {50, 210, 256, 800, 2000};
    const double dmax[] = {50, 60, 100, 300, 300};
    const double eps[] = {1e-7, 1e-6, 1e-4, 1e-2, 0.5};
    mledca::Problem pb;
    pb.base.phy = mledca::table_i_phy();
    pb.base.num_links = links;
    for (int i = 0; i < 5; ++i) {
        mledca::AcEdcaConfig a;
        a.name = "AC" + std::to_string(i + 1);
        a.n_stations = n[i];
        a.payload_bits = 8.0 * bytes[i];
        a.delay_bound_ms = dmax[i];
        a.violation_threshold = eps[i];
        pb.base.all_acs.push_back(a);
    }
    pb.base.all_acs = mledca::default_edca(pb.base.all_acs);
    pb.base.assignment.assign(5, 1);
    return pb;
}

}  // namespace fixtures
