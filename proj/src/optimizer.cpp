#include "mledca/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mledca/parallel.hpp"

namespace mledca {

namespace {

constexpr double kLossFloor = 1e-16;
constexpr double kFallbackDamping = 0.1;
constexpr double kDominanceTolerance = 1e-9;

bool constrained(const AcEdcaConfig& ac) { return ac.violation_threshold < 1.0; }

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double prob) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
}

struct EdcaPreset {
    const char* name;
    int cw_min;
    int cw_max;
    int aifsn;
    int txop_us;
};

// Windows (CW + 1) of the 802.11 defaults: aCWmin = 15, aCWmax = 1023.
constexpr EdcaPreset kVoice{"AC_VO", 4, 8, 2, 1504};
constexpr EdcaPreset kVideo{"AC_VI", 8, 16, 2, 3008};
constexpr EdcaPreset kBestEffort{"AC_BE", 16, 1024, 3, 0};
constexpr EdcaPreset kBackground{"AC_BK", 16, 1024, 7, 0};

}  // namespace

double EvalRecord::violation() const {
    double v = 0.0;
    for (double m : margins) {
        v += std::max(0.0, m);
    }
    return v;
}

bool better(const EvalRecord& a, const EvalRecord& b) {
    if (a.feasible != b.feasible) {
        return a.feasible;
    }
    if (!a.feasible) {
        const double va = a.violation();
        const double vb = b.violation();
        if (va != vb) {
            return va < vb;
        }
    }
    return a.fitness > b.fitness;
}

double loss_fitness(const std::vector<double>& losses) {
    double f = 0.0;
    for (double l : losses) {
        f -= std::log10(std::max(l, kLossFloor));
    }
    return f;
}

int num_links(const Problem& problem) { return problem.multi_link ? problem.base.num_links : 1; }

std::vector<GeneRange> gene_ranges(const Problem& problem) {
    const auto& sp = problem.space;
    std::vector<GeneRange> r;
    for (std::size_t i = 0; i < problem.base.all_acs.size(); ++i) {
        r.push_back(sp.cw_min_exp);
        r.push_back(sp.cw_ratio_exp);
        r.push_back(sp.aifsn);
        r.push_back(sp.txop_steps);
        r.push_back(sp.retry);
        r.push_back({1, num_links(problem)});
    }
    return r;
}

void repair(const Problem& problem, Chromosome& chrom) {
    const auto ranges = gene_ranges(problem);
    for (std::size_t g = 0; g < chrom.genes.size(); ++g) {
        chrom.genes[g] = std::clamp(chrom.genes[g], ranges[g].lo, ranges[g].hi);
    }
    for (std::size_t i = 0; i < problem.base.all_acs.size(); ++i) {
        int& ratio = chrom.gene(i, kCwRatioExp);
        ratio = std::min(ratio, kMaxWindowExp - chrom.gene(i, kCwMinExp));
    }
}

MloScenario decode(const Problem& problem, const Chromosome& chrom) {
    MloScenario s = problem.base;
    s.num_links = num_links(problem);
    s.assignment.assign(s.all_acs.size(), 1);
    for (std::size_t i = 0; i < s.all_acs.size(); ++i) {
        auto& ac = s.all_acs[i];
        ac.cw_min = 1 << chrom.gene(i, kCwMinExp);
        ac.cw_max = ac.cw_min << chrom.gene(i, kCwRatioExp);
        ac.aifsn = chrom.gene(i, kAifsn);
        ac.txop_us = kTxopStepUs * chrom.gene(i, kTxopSteps);
        ac.retry_limit = chrom.gene(i, kRetry);
        if (problem.multi_link) {
            s.assignment[i] = chrom.gene(i, kLink);
        }
    }
    return s;
}

Chromosome encode(const Problem& problem, const MloScenario& scenario) {
    const std::size_t count = problem.base.all_acs.size();
    if (scenario.all_acs.size() != count) {
        throw ConfigError("encode: scenario has a different number of ACs");
    }
    Chromosome c;
    c.genes.assign(count * kGenesPerAc, 0);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& ac = scenario.all_acs[i];
        if (!std::has_single_bit(static_cast<unsigned>(ac.cw_min)) ||
            !std::has_single_bit(static_cast<unsigned>(ac.cw_max / ac.cw_min)) ||
            ac.txop_us % kTxopStepUs != 0) {
            throw ConfigError("encode: AC " + std::to_string(i) + " lies outside the gene space");
        }
        c.gene(i, kCwMinExp) = std::countr_zero(static_cast<unsigned>(ac.cw_min));
        c.gene(i, kCwRatioExp) = std::countr_zero(static_cast<unsigned>(ac.cw_max / ac.cw_min));
        c.gene(i, kAifsn) = ac.aifsn;
        c.gene(i, kTxopSteps) = ac.txop_us / kTxopStepUs;
        c.gene(i, kRetry) = ac.retry_limit;
        c.gene(i, kLink) = problem.multi_link && i < scenario.assignment.size()
                               ? scenario.assignment[i]
                               : 1;
    }
    const auto ranges = gene_ranges(problem);
    for (std::size_t g = 0; g < c.genes.size(); ++g) {
        if (c.genes[g] < ranges[g].lo || c.genes[g] > ranges[g].hi) {
            throw ConfigError("encode: gene " + std::to_string(g) + " outside its range");
        }
    }
    return c;
}

namespace {

std::vector<int> link_key(const LinkPartition& part) {
    std::vector<int> key;
    for (std::size_t k = 0; k < part.ac_indices.size(); ++k) {
        const auto& ac = part.scenario.acs[k];
        key.insert(key.end(), {static_cast<int>(part.ac_indices[k]), ac.cw_min, ac.cw_max,
                               ac.aifsn, ac.txop_us, ac.retry_limit});
    }
    return key;
}

LinkAnalysis analyze_with_fallback(const LinkPartition& part, const AnalysisOptions& options) {
    auto res = analyze_link(part.scenario, options, part.link_id, part.ac_indices);
    if (!res.ok && res.solution.p.empty()) {
        AnalysisOptions slow = options;
        slow.solver.damping = std::min(slow.solver.damping, kFallbackDamping);
        res = analyze_link(part.scenario, slow, part.link_id, part.ac_indices);
    }
    return res;
}

}  // namespace

const LinkAnalysis& Evaluator::link_analysis(const LinkPartition& part) {
    auto key = link_key(part);
    if (auto it = links_.find(key); it != links_.end()) {
        return it->second;
    }
    return links_.emplace(std::move(key), analyze_with_fallback(part, problem_.analysis))
        .first->second;
}

void Evaluator::prefetch(const std::vector<Chromosome>& chroms) {
    std::vector<std::vector<int>> keys;
    std::vector<LinkPartition> parts;
    std::set<std::vector<int>> queued;
    for (const auto& c : chroms) {
        if (chromosomes_.contains(c.genes)) {
            continue;
        }
        for (auto& part : split_links(decode(problem_, c))) {
            if (part.empty()) {
                continue;
            }
            auto key = link_key(part);
            if (links_.contains(key) || !queued.insert(key).second) {
                continue;
            }
            keys.push_back(std::move(key));
            parts.push_back(std::move(part));
        }
    }
    std::vector<LinkAnalysis> results(parts.size());
    parallel_for(
        parts.size(),
        [&](std::size_t i) { results[i] = analyze_with_fallback(parts[i], problem_.analysis); },
        workers_);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        links_.emplace(std::move(keys[i]), std::move(results[i]));
    }
}

EvalRecord Evaluator::evaluate_scenario(const MloScenario& scenario) {
    const std::size_t count = scenario.all_acs.size();
    EvalRecord rec;
    rec.margins.assign(count, 1.0);
    rec.acs.resize(count);
    rec.converged = true;
    std::vector<double> losses(count, 1.0);
    for (const auto& part : split_links(scenario)) {
        if (part.empty()) {
            continue;
        }
        const auto& la = link_analysis(part);
        if (!la.ok) {
            rec.converged = false;
            rec.link_errors.push_back("link " + std::to_string(part.link_id) + ": " + la.error);
            continue;
        }
        for (const auto& r : la.acs) {
            rec.acs[r.ac_index] = r;
            rec.margins[r.ac_index] = r.margin;
            losses[r.ac_index] = r.loss;
        }
    }
    if (!rec.converged) {
        return rec;
    }
    rec.fitness = loss_fitness(losses);
    rec.feasible = true;
    for (std::size_t i = 0; i < count; ++i) {
        if (!constrained(scenario.all_acs[i])) {
            rec.margins[i] = std::min(rec.margins[i], 0.0);
            continue;
        }
        if (!(rec.margins[i] < 0.0)) {
            rec.feasible = false;
        }
    }
    return rec;
}

const EvalRecord& Evaluator::operator()(const Chromosome& chrom) {
    if (auto it = chromosomes_.find(chrom.genes); it != chromosomes_.end()) {
        ++cache_hits_;
        return it->second;
    }
    ++evaluations_;
    auto rec = evaluate_scenario(decode(problem_, chrom));
    return chromosomes_.emplace(chrom.genes, std::move(rec)).first->second;
}

EvalRecord evaluate(const Problem& problem, const Chromosome& chrom) {
    Evaluator eval(problem);
    return eval(chrom);
}

namespace {

class Ga {
public:
    Ga(const Problem& problem, const GaConfig& config)
        : problem_(problem),
          config_(config),
          ranges_(gene_ranges(problem)),
          eval_(problem, config.workers),
          rng_(config.seed) {
        rate_ = config.mutation_rate >= 0.0 ? config.mutation_rate
                                             : 1.0 / static_cast<double>(ranges_.size());
    }

    GaResult run(const std::vector<Chromosome>& seeds);

private:
    Chromosome random_chromosome();
    std::size_t tournament(const std::vector<const EvalRecord*>& recs);
    void mutate(Chromosome& c);
    std::vector<Chromosome> next_generation(const std::vector<Chromosome>& pop,
                                            const std::vector<const EvalRecord*>& recs);

    const Problem& problem_;
    GaConfig config_;
    std::vector<GeneRange> ranges_;
    Evaluator eval_;
    std::mt19937_64 rng_;
    double rate_ = 0.0;
};

Chromosome Ga::random_chromosome() {
    Chromosome c;
    c.genes.reserve(ranges_.size());
    for (const auto& r : ranges_) {
        c.genes.push_back(uniform(rng_, r.lo, r.hi));
    }
    repair(problem_, c);
    return c;
}

std::size_t Ga::tournament(const std::vector<const EvalRecord*>& recs) {
    const int n = static_cast<int>(recs.size());
    auto best = static_cast<std::size_t>(uniform(rng_, 0, n - 1));
    for (int k = 1; k < config_.tournament; ++k) {
        const auto other = static_cast<std::size_t>(uniform(rng_, 0, n - 1));
        if (better(*recs[other], *recs[best])) {
            best = other;
        }
    }
    return best;
}

void Ga::mutate(Chromosome& c) {
    for (std::size_t g = 0; g < c.genes.size(); ++g) {
        const auto& r = ranges_[g];
        if (r.span() <= 1 || !coin(rng_, rate_)) {
            continue;
        }
        if (coin(rng_, 0.5)) {
            c.genes[g] = uniform(rng_, r.lo, r.hi);
        } else {
            const int step = uniform(rng_, 1, 3) * (coin(rng_, 0.5) ? 1 : -1);
            c.genes[g] = std::clamp(c.genes[g] + step, r.lo, r.hi);
        }
    }
    repair(problem_, c);
}

std::vector<Chromosome> Ga::next_generation(const std::vector<Chromosome>& pop,
                                            const std::vector<const EvalRecord*>& recs) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(*recs[a], *recs[b]); });

    std::vector<Chromosome> next;
    const auto target = static_cast<std::size_t>(config_.population);
    const auto elites = std::min<std::size_t>(static_cast<std::size_t>(config_.elite), pop.size());
    for (std::size_t e = 0; e < elites; ++e) {
        next.push_back(pop[order[e]]);
    }
    while (next.size() < target) {
        Chromosome a = pop[tournament(recs)];
        Chromosome b = pop[tournament(recs)];
        if (coin(rng_, config_.crossover)) {
            for (std::size_t g = 0; g < a.genes.size(); ++g) {
                if (coin(rng_, 0.5)) {
                    std::swap(a.genes[g], b.genes[g]);
                }
            }
        }
        mutate(a);
        next.push_back(std::move(a));
        if (next.size() < target) {
            mutate(b);
            next.push_back(std::move(b));
        }
    }
    return next;
}

GaResult Ga::run(const std::vector<Chromosome>& seeds) {
    GaResult res;
    const bool single_point = std::all_of(ranges_.begin(), ranges_.end(),
                                          [](const GeneRange& r) { return r.span() == 1; });

    std::vector<Chromosome> pop;
    for (auto s : seeds) {
        if (s.genes.size() != ranges_.size()) {
            throw ConfigError("ga_optimize: seed chromosome has the wrong length");
        }
        repair(problem_, s);
        pop.push_back(std::move(s));
    }
    if (single_point) {
        pop.assign(1, random_chromosome());
    }
    while (pop.size() < static_cast<std::size_t>(std::max(config_.population, 1))) {
        pop.push_back(random_chromosome());
    }

    const EvalRecord* best = nullptr;
    int stagnant = 0;
    for (int gen = 1; gen <= std::max(config_.generations, 1); ++gen) {
        if (gen > 1) {
            eval_.prefetch(pop);
            std::vector<const EvalRecord*> recs;
            for (const auto& c : pop) {
                recs.push_back(&eval_(c));
            }
            pop = next_generation(pop, recs);
        }
        eval_.prefetch(pop);
        std::vector<const EvalRecord*> recs;
        bool improved = false;
        double sum = 0.0;
        long finite = 0;
        long feasible = 0;
        for (const auto& c : pop) {
            const auto& rec = eval_(c);
            recs.push_back(&rec);
            if (best == nullptr || better(rec, *best)) {
                best = &rec;
                res.best = c;
                improved = true;
            }
            if (std::isfinite(rec.fitness)) {
                sum += rec.fitness;
                ++finite;
            }
            feasible += rec.feasible ? 1 : 0;
        }
        GenerationStats st;
        st.generation = gen;
        st.best = best->feasible ? best->fitness : kNegInf;
        st.mean = finite > 0 ? sum / static_cast<double>(finite) : kNegInf;
        st.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(pop.size());
        res.history.push_back(st);

        stagnant = improved ? 0 : stagnant + 1;
        if (single_point || (gen > 1 && stagnant >= config_.stagnation)) {
            break;
        }
    }
    res.record = *best;
    res.feasible = best->feasible;
    res.evaluations = eval_.evaluations();
    res.cache_hits = eval_.cache_hits();
    return res;
}

}  // namespace

GaResult ga_optimize(const Problem& problem, const GaConfig& config,
                     const std::vector<Chromosome>& seeds) {
    if (problem.base.all_acs.empty()) {
        throw ConfigError("ga_optimize: problem has no AC");
    }
    Ga ga(problem, config);
    return ga.run(seeds);
}

ModeComparison compare_modes(const Problem& problem, const GaConfig& config) {
    ModeComparison out;
    Problem single = problem;
    single.multi_link = false;
    Problem multi = problem;
    multi.multi_link = true;

    out.single = ga_optimize(single, config);
    std::vector<Chromosome> seeds;
    if (num_links(multi) >= 2) {
        // Same gene layout; the single-link optimum has every link gene at 1.
        seeds.push_back(out.single.best);
        out.seeded = true;
    }
    out.multi = ga_optimize(multi, config, seeds);
    out.multi_improved = better(out.multi.record, out.single.record);
    if (out.single.feasible) {
        out.dominates = out.multi.feasible &&
                        out.multi.record.fitness >= out.single.record.fitness - kDominanceTolerance;
    } else {
        out.dominates = !better(out.single.record, out.multi.record);
    }
    return out;
}

std::vector<AcEdcaConfig> default_edca(std::vector<AcEdcaConfig> acs) {
    static constexpr EdcaPreset kFive[] = {kVoice, kVoice, kVideo, kBestEffort, kBackground};
    static constexpr EdcaPreset kFour[] = {kVoice, kVideo, kBestEffort, kBackground};
    for (std::size_t i = 0; i < acs.size(); ++i) {
        const EdcaPreset& p = acs.size() == 5 ? kFive[i] : kFour[std::min<std::size_t>(i, 3)];
        acs[i].cw_min = p.cw_min;
        acs[i].cw_max = p.cw_max;
        acs[i].aifsn = p.aifsn;
        acs[i].txop_us = p.txop_us;
        acs[i].retry_limit = 7;
    }
    return acs;
}

}  // namespace mledca
