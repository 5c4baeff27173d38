#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mledca/ccdf.hpp"
#include "mledca/fixed_point.hpp"
#include "mledca/scenario.hpp"

namespace mledca {

struct AnalysisOptions {
    SolverOptions solver;
    InversionOptions inversion;
    /// Skip the tail inversion for ACs whose epsilon is 1 (no delay constraint).
    bool skip_unconstrained = false;
};

struct AcReport {
    std::size_t ac_index = 0;   // position in the scenario's full AC list
    int link_id = 1;
    std::string name;
    double p = 0.0;
    double c = 0.0;
    double loss = 0.0;
    int n_txop = 1;
    long x_slots = 0;
    double violation_prob = 0.0;  // Pr(D >= D_max); 0 when skipped
    double theta = 0.0;
    bool tail_evaluated = false;
    double margin = 0.0;          // violation_prob - epsilon
};

struct LinkAnalysis {
    int link_id = 1;
    bool ok = false;
    std::string error;           // set when !ok
    FixedPointSolution solution;
    std::vector<AcReport> acs;
};

/// Fixed point plus delay tail of every AC on one link. Solver and inversion
/// failures are reported through `ok` and `error`, not thrown.
LinkAnalysis analyze_link(const LinkScenario& link, const AnalysisOptions& options = {},
                          int link_id = 1, const std::vector<std::size_t>& ac_indices = {});

/// Every non-empty link of an MLO scenario.
std::vector<LinkAnalysis> analyze(const MloScenario& mlo, const AnalysisOptions& options = {});

}  // namespace mledca
