#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mledca/analysis.hpp"
#include "mledca/scenario.hpp"

namespace mledca {

struct GeneRange {
    int lo = 0;
    int hi = 0;
    int span() const { return hi - lo + 1; }
};

/// Per-AC gene ranges. CW_min = 2^cw_min_exp, CW_max = CW_min * 2^cw_ratio_exp,
/// TXOP = 32 us * txop_steps. The ratio is repaired so that CW_max <= 1024.
struct SearchSpace {
    GeneRange cw_min_exp{1, 10};
    GeneRange cw_ratio_exp{0, 10};
    GeneRange aifsn{2, 15};
    GeneRange txop_steps{0, 256};
    GeneRange retry{4, 7};
};

inline constexpr int kGenesPerAc = 6;
inline constexpr int kTxopStepUs = 32;
inline constexpr int kMaxWindowExp = 10;

enum Gene : int { kCwMinExp = 0, kCwRatioExp, kAifsn, kTxopSteps, kRetry, kLink };

/// Genes of AC i live at [i * kGenesPerAc, (i + 1) * kGenesPerAc).
struct Chromosome {
    std::vector<int> genes;

    int gene(std::size_t ac, Gene g) const { return genes[ac * kGenesPerAc + g]; }
    int& gene(std::size_t ac, Gene g) { return genes[ac * kGenesPerAc + g]; }
    bool operator==(const Chromosome&) const = default;
};

struct Problem {
    /// Workload and QoS targets; the EDCA tunables in here are ignored by decode().
    MloScenario base;
    /// false: every AC is pinned to link 1 of a single-link system.
    bool multi_link = true;
    SearchSpace space;
    AnalysisOptions analysis{.solver = {}, .inversion = {}, .skip_unconstrained = true};
};

struct GaConfig {
    int population = 200;
    int generations = 60;
    double crossover = 0.8;
    int elite = 8;
    int stagnation = 20;
    double mutation_rate = -1.0;   // negative: 1 / number of genes
    int tournament = 3;
    std::uint64_t seed = 1;
    unsigned workers = 0;          // evaluation threads; 0: one per hardware thread
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct EvalRecord {
    double fitness = kNegInf;
    std::vector<double> margins;       // per AC: Pr(D >= D_max) - epsilon
    bool feasible = false;
    bool converged = false;
    std::vector<AcReport> acs;         // per AC, problem order
    std::vector<std::string> link_errors;

    /// Sum of the positive margins; the infeasibility measure used in selection.
    double violation() const;
};

/// Feasibility-first ordering: true if `a` should be preferred over `b`.
bool better(const EvalRecord& a, const EvalRecord& b);

/// sum over ACs of -log10(max(P_loss, 1e-16)).
double loss_fitness(const std::vector<double>& losses);

int num_links(const Problem& problem);
std::vector<GeneRange> gene_ranges(const Problem& problem);
void repair(const Problem& problem, Chromosome& chrom);
MloScenario decode(const Problem& problem, const Chromosome& chrom);
/// Inverse of decode; throws ConfigError if the scenario lies outside the gene space.
Chromosome encode(const Problem& problem, const MloScenario& scenario);

/// Evaluates chromosomes and scenarios, memoizing both whole chromosomes and
/// individual link analyses.
class Evaluator {
public:
    explicit Evaluator(const Problem& problem, unsigned workers = 1)
        : problem_(problem), workers_(workers) {}

    const EvalRecord& operator()(const Chromosome& chrom);
    /// Analyzes, concurrently, every link not yet cached that the uncached
    /// chromosomes in `chroms` need. Cache contents do not depend on `workers`.
    void prefetch(const std::vector<Chromosome>& chroms);
    EvalRecord evaluate_scenario(const MloScenario& scenario);

    long evaluations() const { return evaluations_; }
    long cache_hits() const { return cache_hits_; }

private:
    const LinkAnalysis& link_analysis(const LinkPartition& part);

    const Problem& problem_;
    unsigned workers_ = 1;
    std::map<std::vector<int>, EvalRecord> chromosomes_;
    std::map<std::vector<int>, LinkAnalysis> links_;
    long evaluations_ = 0;
    long cache_hits_ = 0;
};

/// One-shot evaluation without a cache.
EvalRecord evaluate(const Problem& problem, const Chromosome& chrom);

struct GenerationStats {
    int generation = 0;
    double best = kNegInf;            // best feasible fitness so far
    double mean = kNegInf;            // over finite fitness values of the population
    double feasible_fraction = 0.0;
};

struct GaResult {
    Chromosome best;
    EvalRecord record;
    bool feasible = false;
    std::vector<GenerationStats> history;
    long evaluations = 0;
    long cache_hits = 0;
};

/// Genetic search over the gene space of `problem`. `seeds` are injected
/// into the first population (after repair).
GaResult ga_optimize(const Problem& problem, const GaConfig& config,
                     const std::vector<Chromosome>& seeds = {});

struct ModeComparison {
    GaResult single;
    GaResult multi;
    bool seeded = false;             // multi-link run started from the single-link optimum
    bool multi_improved = false;     // multi-link run beat its seed
    bool dominates = false;          // multi >= single - 1e-9 (feasible-first)
};

/// Single-link and multi-link searches with identical budgets and seeds. When
/// the problem has two or more links the multi-link population also receives
/// the single-link optimum with every AC on link 1.
ModeComparison compare_modes(const Problem& problem, const GaConfig& config);

/// The 802.11 default EDCA parameter set applied to `acs` (windows are CW + 1).
/// Five ACs map to VO, VO, VI, BE, BK; other counts take VO, VI, BE, BK in order
/// and repeat BK.
std::vector<AcEdcaConfig> default_edca(std::vector<AcEdcaConfig> acs);

}  // namespace mledca
