#include "mledca/analysis.hpp"

#include "mledca/airtime.hpp"
#include "mledca/delay_gf.hpp"
#include "mledca/zone_model.hpp"

namespace mledca {

LinkAnalysis analyze_link(const LinkScenario& link, const AnalysisOptions& options, int link_id,
                          const std::vector<std::size_t>& ac_indices) {
    LinkAnalysis out;
    out.link_id = link_id;
    const ZoneModel zm = build_zones(link);
    try {
        out.solution = solve(link, zm, options.solver);
    } catch (const ConvergenceError& e) {
        out.error = e.what();
        return out;
    }
    const auto& sol = out.solution;
    try {
        for (std::size_t k = 0; k < link.acs.size(); ++k) {
            const auto& cfg = link.acs[k];
            AcReport r;
            r.ac_index = ac_indices.empty() ? k : ac_indices[k];
            r.link_id = link_id;
            r.name = cfg.name;
            r.p = sol.p[k];
            r.c = sol.c[k];
            r.loss = sol.loss[k];
            r.n_txop = ac_timing(cfg, link.phy).n_txop;
            r.x_slots = delay_slots(cfg.delay_bound_ms, link.phy);
            if (!(options.skip_unconstrained && cfg.violation_threshold >= 1.0)) {
                const DelayGf gf(link, zm, sol, k);
                const auto tail = invert_ccdf(gf, r.x_slots, options.inversion);
                r.violation_prob = tail.probability;
                r.theta = tail.theta;
                r.tail_evaluated = true;
            }
            r.margin = r.violation_prob - cfg.violation_threshold;
            out.acs.push_back(r);
        }
    } catch (const GfEvaluationError& e) {
        out.acs.clear();
        out.error = e.what();
        return out;
    }
    out.ok = true;
    return out;
}

std::vector<LinkAnalysis> analyze(const MloScenario& mlo, const AnalysisOptions& options) {
    std::vector<LinkAnalysis> out;
    for (const auto& part : split_links(mlo)) {
        if (part.empty()) {
            continue;
        }
        out.push_back(analyze_link(part.scenario, options, part.link_id, part.ac_indices));
    }
    return out;
}

}  // namespace mledca
