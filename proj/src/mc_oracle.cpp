#include "mledca/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mledca/airtime.hpp"
#include "mledca/zone_model.hpp"

namespace mledca {

namespace {

constexpr long kFewSamples = 100;

struct Station {
    std::size_t ac = 0;
    int stage = 0;        // collisions suffered by the head-of-line packet
    int counter = 0;
    double hol_us = 0.0;  // when the current packet reached the head of the line
};

double ratio(long long num, long long den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

double AcSimStats::p_hat() const { return ratio(attempts, idle_slots); }
double AcSimStats::c_hat() const { return ratio(collisions, attempts); }
double AcSimStats::loss_hat() const { return ratio(drops, packets); }

std::vector<double> SimReport::zone_frequencies() const {
    std::vector<double> f(zone_visits.size(), 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        f[j] = ratio(zone_visits[j], boundaries);
    }
    return f;
}

SimReport simulate(const LinkScenario& link, const SimOptions& options) {
    const auto& phy = link.phy;
    const ZoneModel zm = build_zones(link);
    const std::size_t count = link.acs.size();

    std::vector<AcTiming> timing(count);
    std::vector<int> offset(count);
    std::vector<std::vector<int>> windows(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& cfg = link.acs[i];
        timing[i] = ac_timing(cfg, phy);
        offset[i] = zm.offset_of(i);
        const int stages = cfg.max_backoff_stage();
        for (int j = 0; j < cfg.retry_limit; ++j) {
            windows[i].push_back(cfg.cw_min << std::min(j, stages));
        }
    }
    const double aifs_min = aifs_of(link.acs[zm.sorted_acs.front()], phy);

    std::mt19937_64 rng(options.seed);
    const auto draw = [&](std::size_t ac, int stage) {
        std::uniform_int_distribution<int> u(0, windows[ac][static_cast<std::size_t>(stage)] - 1);
        return u(rng);
    };

    std::vector<Station> stations;
    for (std::size_t i = 0; i < count; ++i) {
        for (int s = 0; s < link.acs[i].n_stations; ++s) {
            Station st;
            st.ac = i;
            st.counter = draw(i, 0);
            stations.push_back(st);
        }
    }

    SimReport rep;
    rep.seed = options.seed;
    rep.acs.resize(count);
    rep.zone_visits.assign(static_cast<std::size_t>(zm.num_zones()), 0);

    const auto finished = [&] {
        return std::all_of(rep.acs.begin(), rep.acs.end(), [&](const AcSimStats& a) {
            return a.packets >= options.packets_per_ac;
        });
    };

    std::vector<std::size_t> senders;
    double busy_end = 0.0;
    int t = 1;
    while (rep.boundaries < options.max_boundaries && !finished()) {
        const double now = busy_end + aifs_min + (t - 1) * phy.slot_us;
        ++rep.boundaries;
        ++rep.zone_visits[static_cast<std::size_t>(zm.zone_of_slot(t) - 1)];

        senders.clear();
        for (std::size_t s = 0; s < stations.size(); ++s) {
            auto& st = stations[s];
            if (t < offset[st.ac] + 1) {
                continue;
            }
            if (st.counter == 0) {
                senders.push_back(s);
            } else {
                --st.counter;
                ++rep.acs[st.ac].idle_slots;
            }
        }
        if (senders.empty()) {
            ++t;
            continue;
        }

        double busy = 0.0;
        if (senders.size() == 1) {
            auto& st = stations[senders.front()];
            auto& stats = rep.acs[st.ac];
            const auto& tm = timing[st.ac];
            busy = tm.t_rts + tm.t_cts + tm.n_txop * tm.delta + phy.sifs_us;
            ++stats.attempts;
            ++stats.successes;
            ++stats.packets;
            if (options.keep_delays) {
                stats.delays_us.push_back(now - st.hol_us + tm.t_data);
                for (int k = 1; k < tm.n_txop; ++k) {
                    stats.delays_us.push_back(tm.delta);
                }
            }
            st.hol_us = now + busy;
            st.stage = 0;
            st.counter = draw(st.ac, 0);
        } else {
            for (std::size_t s : senders) {
                busy = std::max(busy, timing[stations[s].ac].t_rts);
            }
            for (std::size_t s : senders) {
                auto& st = stations[s];
                auto& stats = rep.acs[st.ac];
                ++stats.attempts;
                ++stats.collisions;
                ++st.stage;
                if (st.stage >= link.acs[st.ac].retry_limit) {
                    ++stats.drops;
                    ++stats.packets;
                    st.stage = 0;
                    st.hol_us = now + busy;
                }
                st.counter = draw(st.ac, st.stage);
            }
        }
        busy_end = now + busy;
        rep.sim_time_us = busy_end;
        t = 1;
    }
    return rep;
}

Interval wilson(long long successes, long long trials, double z) {
    Interval iv;
    iv.trials = trials;
    iv.few_samples = trials < kFewSamples;
    if (trials <= 0) {
        iv.upper = 1.0;
        return iv;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    iv.estimate = p;
    if (successes == 0) {
        iv.upper = std::min(1.0, 3.0 / n);
        return iv;
    }
    if (successes == trials) {
        iv.lower = std::max(0.0, 1.0 - 3.0 / n);
        iv.upper = 1.0;
        return iv;
    }
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    iv.lower = std::max(0.0, centre - half);
    iv.upper = std::min(1.0, centre + half);
    return iv;
}

Interval empirical_ccdf(const AcSimStats& stats, double x_us) {
    const auto& d = stats.delays_us;
    const long long hits = std::count_if(d.begin(), d.end(), [&](double v) { return v >= x_us; });
    return wilson(hits, static_cast<long long>(d.size()), 1.96);
}

}  // namespace mledca
