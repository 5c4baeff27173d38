#include "mledca/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mledca/ccdf.hpp"
#include "mledca/delay_gf.hpp"
#include "mledca/parallel.hpp"
#include "mledca/zone_model.hpp"

namespace mledca::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kMonotoneSlack = 1e-7;
constexpr double kSigmaBand = 3.0;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

void prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("cannot create output directory '" + dir + "'");
    }
}

json load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
    json doc = read_json_file(path);
    for (const auto& o : overrides) {
        apply_override(doc, o);
    }
    return doc;
}

std::string ms_label(double ms) {
    std::ostringstream os;
    os << ms;
    return "ccdf@" + os.str() + "ms";
}

bool inside(const Interval& iv, double v) { return v >= iv.lower && v <= iv.upper; }

}  // namespace

json RunManifest::to_json() const {
    json j{{"subcommand", subcommand},
           {"config", config_path},
           {"out", out_dir},
           {"overrides", overrides},
           {"tool_version", tool_version},
           {"timestamp", timestamp}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    if (!sweeps.empty()) {
        j["sweeps"] = sweeps;
    }
    if (!modes.empty()) {
        j["modes"] = modes;
    }
    if (packets > 0) {
        j["packets"] = packets;
    }
    return j;
}

RunConfig resolve_config(const json& doc) {
    RunConfig cfg = parse_config(doc);
    const auto violations = validate(cfg.scenario);
    if (!violations.empty()) {
        throw ConfigError("invalid scenario:\n" + format_violations(violations));
    }
    return cfg;
}

// ---------------------------------------------------------------- analyze

CsvTable analysis_table(const MloScenario& scenario, const std::vector<LinkAnalysis>& links) {
    CsvTable t("mledca.analysis/1",
               {"link", "ac", "name", "status", "p", "c", "p_loss", "n_txop", "dmax_ms",
                "x_slots", "pr_violation", "theta", "epsilon", "margin"});
    for (const auto& la : links) {
        if (!la.ok) {
            for (const auto& part : split_links(scenario)) {
                if (part.link_id != la.link_id) {
                    continue;
                }
                for (std::size_t i : part.ac_indices) {
                    const auto& ac = scenario.all_acs[i];
                    t.add_row({fmt(la.link_id), fmt(i + 1), ac.name, "failed: " + la.error, "",
                               "", "", "", fmt(ac.delay_bound_ms), "", "", "",
                               fmt(ac.violation_threshold), ""});
                }
            }
            continue;
        }
        for (const auto& r : la.acs) {
            const auto& ac = scenario.all_acs[r.ac_index];
            t.add_row({fmt(la.link_id), fmt(r.ac_index + 1), r.name, "ok", fmt(r.p), fmt(r.c),
                       fmt(r.loss), fmt(r.n_txop), fmt(ac.delay_bound_ms), fmt(r.x_slots),
                       fmt(r.violation_prob), fmt(r.theta), fmt(ac.violation_threshold),
                       fmt(r.margin)});
        }
    }
    return t;
}

std::vector<long> ccdf_grid(long x_bound, int points) {
    const double lo = std::log10(10.0);
    const double hi = std::log10(std::max(100.0, 4.0 * static_cast<double>(x_bound)));
    std::vector<long> xs;
    for (int k = 0; k < points; ++k) {
        const double e = lo + (hi - lo) * k / std::max(1, points - 1);
        const long x = std::lround(std::pow(10.0, e));
        if (xs.empty() || xs.back() != x) {
            xs.push_back(x);
        }
    }
    return xs;
}

CsvTable ccdf_table(const LinkScenario& link, const FixedPointSolution& sol, std::size_t ac,
                    const InversionOptions& inversion) {
    const ZoneModel zm = build_zones(link);
    const DelayGf gf(link, zm, sol, ac);
    CsvTable t("mledca.ccdf/1", {"x_slots", "delay_ms", "pr_ge"});
    const double step_ms = link.phy.delta_us / 1000.0;
    for (long x : ccdf_grid(delay_slots(link.acs[ac].delay_bound_ms, link.phy))) {
        const auto r = invert_ccdf(gf, x, inversion);
        t.add_row({fmt(x), fmt(static_cast<double>(x) * step_ms), fmt(r.probability)});
    }
    return t;
}

// ------------------------------------------------------------ sensitivity

SweepAxis parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw ConfigError("sweep '" + spec + "': expected path=lo:hi:step or path=v1,v2,...");
    }
    SweepAxis axis;
    axis.path = spec.substr(0, eq);
    const std::string body = spec.substr(eq + 1);
    if (body.find(':') != std::string::npos) {
        double lo = 0.0;
        double hi = 0.0;
        double step = 0.0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream is(body);
        if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) ||
            hi < lo) {
            throw ConfigError("sweep '" + spec + "': bad range, expected lo:hi:step with step > 0");
        }
        const bool integral = lo == std::floor(lo) && step == std::floor(step);
        const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long k = 0; k < count; ++k) {
            const double v = lo + static_cast<double>(k) * step;
            axis.values.push_back(integral ? json(static_cast<long>(std::llround(v))) : json(v));
        }
    } else {
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                axis.values.push_back(json::parse(item));
            } catch (const json::parse_error&) {
                axis.values.push_back(item);
            }
        }
    }
    if (axis.values.empty()) {
        throw ConfigError("sweep '" + spec + "': no values");
    }
    return axis;
}

std::vector<SweepAxis> default_sensitivity_sweep() {
    return {parse_sweep("acs[1].aifsn=2:15:1"), parse_sweep("acs[1].txop_us=0:8160:544")};
}

CsvTable sensitivity_grid(const json& doc, const std::vector<SweepAxis>& axes) {
    // Every axis must name a real field: one trial parse per axis.
    for (const auto& axis : axes) {
        json probe = doc;
        set_path(probe, axis.path, axis.values.front());
        (void)parse_config(probe);
    }
    const std::size_t acs = doc.contains("acs") ? doc["acs"].size() : 0;
    std::vector<std::string> cols;
    for (const auto& axis : axes) {
        cols.push_back(axis.path);
    }
    cols.push_back("status");
    for (std::size_t k = 1; k <= acs; ++k) {
        cols.push_back("p_loss_" + std::to_string(k));
        cols.push_back("pr_violation_" + std::to_string(k));
        cols.push_back("theta_" + std::to_string(k));
    }
    CsvTable t("mledca.sensitivity/1", cols);

    // Points in row order, first axis outermost.
    std::vector<std::vector<std::size_t>> points;
    for (std::vector<std::size_t> idx(axes.size(), 0);;) {
        points.push_back(idx);
        std::size_t a = axes.size();
        while (a > 0 && ++idx[a - 1] == axes[a - 1].values.size()) {
            idx[--a] = 0;
        }
        if (a == 0) {
            break;
        }
    }

    std::vector<std::vector<std::string>> rows(points.size());
    parallel_for(points.size(), [&](std::size_t p) {
        json point = doc;
        std::vector<std::string> row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const auto& v = axes[a].values[points[p][a]];
            set_path(point, axes[a].path, v);
            row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::vector<std::string> metrics(3 * acs, "");
        std::string status = "ok";
        try {
            const RunConfig cfg = resolve_config(point);
            for (const auto& la : analyze(cfg.scenario, cfg.analysis)) {
                if (!la.ok) {
                    status = "failed: link " + std::to_string(la.link_id) + ": " + la.error;
                    continue;
                }
                for (const auto& r : la.acs) {
                    metrics[3 * r.ac_index] = fmt(r.loss);
                    metrics[3 * r.ac_index + 1] = fmt(r.violation_prob);
                    metrics[3 * r.ac_index + 2] = fmt(r.theta);
                }
            }
        } catch (const ConfigError& e) {
            status = std::string("invalid: ") + e.what();
            std::replace(status.begin(), status.end(), '\n', ' ');
        }
        row.push_back(status);
        row.insert(row.end(), metrics.begin(), metrics.end());
        rows[p] = std::move(row);
    });
    for (auto& row : rows) {
        t.add_row(std::move(row));
    }
    return t;
}

// --------------------------------------------------------------- optimize

CsvTable history_table(const GaResult& result) {
    CsvTable t("mledca.history/1", {"generation", "best_fitness", "mean_fitness",
                                    "feasible_fraction"});
    for (const auto& h : result.history) {
        t.add_row({fmt(h.generation), fmt(h.best), fmt(h.mean), fmt(h.feasible_fraction)});
    }
    return t;
}

CsvTable comparison_table(const std::vector<ComparisonEntry>& entries) {
    CsvTable t("mledca.comparison/1",
               {"config", "ac", "name", "link", "cw_min", "cw_max", "aifsn", "txop_us",
                "retry_limit", "p_loss", "pr_violation", "epsilon", "meets_bound", "fitness",
                "feasible"});
    for (const auto& e : entries) {
        for (std::size_t i = 0; i < e.scenario.all_acs.size(); ++i) {
            const auto& ac = e.scenario.all_acs[i];
            const bool have = i < e.record.acs.size() && e.record.converged;
            const auto& r = have ? e.record.acs[i] : AcReport{};
            t.add_row({e.label, fmt(i + 1), ac.name, fmt(e.scenario.assignment[i]),
                       fmt(ac.cw_min), fmt(ac.cw_max), fmt(ac.aifsn), fmt(ac.txop_us),
                       fmt(ac.retry_limit), have ? fmt(r.loss) : "",
                       have && r.tail_evaluated ? fmt(r.violation_prob) : "",
                       fmt(ac.violation_threshold),
                       fmt(have && (ac.violation_threshold >= 1.0 || e.record.margins[i] < 0.0)),
                       fmt(e.record.fitness), fmt(e.record.feasible)});
        }
    }
    return t;
}

// --------------------------------------------------------------- validate

std::vector<ValidationRow> validate_link(const LinkScenario& link, const AnalysisOptions& options,
                                         const SimOptions& sim, int link_id,
                                         const std::vector<std::size_t>& ac_indices) {
    std::vector<ValidationRow> rows;
    const auto index_of = [&](std::size_t k) { return ac_indices.empty() ? k : ac_indices[k]; };
    AnalysisOptions full = options;
    full.skip_unconstrained = false;
    const auto la = analyze_link(link, full, link_id, ac_indices);
    if (!la.ok) {
        ValidationRow r;
        r.link_id = link_id;
        r.metric = "solve";
        rows.push_back(r);
        return rows;
    }
    const SimReport rep = simulate(link, sim);
    const ZoneModel zm = build_zones(link);
    for (std::size_t k = 0; k < link.acs.size(); ++k) {
        const auto& stats = rep.acs[k];
        const auto& ar = la.acs[k];
        const auto add = [&](const std::string& metric, double analytic, const Interval& iv) {
            rows.push_back({link_id, index_of(k), metric, analytic, iv.estimate, iv.lower,
                            iv.upper, inside(iv, analytic)});
        };
        add("p", ar.p, wilson(stats.attempts, stats.idle_slots, kSigmaBand));
        add("c", ar.c, wilson(stats.collisions, stats.attempts, kSigmaBand));
        add("p_loss", ar.loss, wilson(stats.drops, stats.packets, kSigmaBand));

        const DelayGf gf(link, zm, la.solution, k);
        std::set<double> anchors{10.0, 50.0, 100.0, link.acs[k].delay_bound_ms};
        for (double ms : anchors) {
            const double analytic = invert_ccdf(gf, delay_slots(ms, link.phy), full.inversion)
                                        .probability;
            const auto iv = empirical_ccdf(stats, ms * 1000.0);
            rows.push_back({link_id, index_of(k), ms_label(ms), analytic, iv.estimate, iv.lower,
                            iv.upper, inside(iv, analytic)});
        }

        double worst = 0.0;
        double prev = 1.0;
        for (long x : ccdf_grid(delay_slots(link.acs[k].delay_bound_ms, link.phy), 20)) {
            const double v = invert_ccdf(gf, x, full.inversion).probability;
            worst = std::max(worst, v - prev);
            prev = v;
        }
        rows.push_back({link_id, index_of(k), "ccdf_monotone", worst, 0.0, 0.0, kMonotoneSlack,
                        worst <= kMonotoneSlack});
    }
    return rows;
}

CsvTable validation_table(const std::vector<ValidationRow>& rows) {
    CsvTable t("mledca.validation/1",
               {"link", "ac", "metric", "analytic", "simulated", "lower", "upper", "pass"});
    for (const auto& r : rows) {
        t.add_row({fmt(r.link_id), fmt(r.ac_index + 1), r.metric, fmt(r.analytic),
                   fmt(r.simulated), fmt(r.lower), fmt(r.upper), r.pass ? "pass" : "FAIL"});
    }
    return t;
}

// ------------------------------------------------------------------ main

namespace {

struct CommonArgs {
    std::string config;
    std::string out = "out";
    std::vector<std::string> overrides;
    std::uint64_t seed = 1;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_seed) {
    sub->add_option("--config", args.config, "scenario config (JSON)")->required();
    sub->add_option("--out", args.out, "output directory")->capture_default_str();
    sub->add_option("--set", args.overrides, "override a config value, e.g. acs[1].aifsn=4");
    if (with_seed) {
        args.seed_opt = sub->add_option("--seed", args.seed, "random seed");
    }
}

RunManifest manifest_for(const std::string& name, const CommonArgs& args) {
    RunManifest m;
    m.subcommand = name;
    m.config_path = args.config;
    m.out_dir = args.out;
    m.overrides = args.overrides;
    m.timestamp = utc_timestamp();
    return m;
}

void print_table(const CsvTable& t) {
    std::cout << t.str();
}

int cmd_analyze(const CommonArgs& args) {
    const json doc = load_with_overrides(args.config, args.overrides);
    const RunConfig cfg = resolve_config(doc);
    prepare_out_dir(args.out);
    const auto links = analyze(cfg.scenario, cfg.analysis);
    const auto table = analysis_table(cfg.scenario, links);
    table.write(fs::path(args.out) / "analysis.csv");
    print_table(table);

    bool ok = true;
    for (const auto& part : split_links(cfg.scenario)) {
        for (const auto& la : links) {
            if (la.link_id != part.link_id) {
                continue;
            }
            if (!la.ok) {
                ok = false;
                std::cerr << "link " << la.link_id << ": " << la.error << '\n';
                continue;
            }
            for (std::size_t k = 0; k < part.ac_indices.size(); ++k) {
                const auto name = "ccdf_link" + std::to_string(la.link_id) + "_ac" +
                                  std::to_string(part.ac_indices[k] + 1) + ".csv";
                ccdf_table(part.scenario, la.solution, k, cfg.analysis.inversion)
                    .write(fs::path(args.out) / name);
            }
        }
    }
    write_text(fs::path(args.out) / "manifest.json",
               manifest_for("analyze", args).to_json().dump(2) + "\n");
    return ok ? kOk : kFailed;
}

int cmd_sensitivity(const CommonArgs& args, const std::vector<std::string>& sweeps) {
    const json doc = load_with_overrides(args.config, args.overrides);
    (void)resolve_config(doc);
    std::vector<SweepAxis> axes;
    for (const auto& s : sweeps) {
        axes.push_back(parse_sweep(s));
    }
    if (axes.empty()) {
        axes = default_sensitivity_sweep();
    }
    CsvTable grid = [&] {
        try {
            return sensitivity_grid(doc, axes);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("usage: sweep names an unknown or malformed field: ") +
                              e.what());
        }
    }();
    prepare_out_dir(args.out);
    grid.write(fs::path(args.out) / "sensitivity.csv");
    auto m = manifest_for("sensitivity", args);
    for (const auto& a : axes) {
        std::string spec = a.path + "=";
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            spec += (i ? "," : "") + a.values[i].dump();
        }
        m.sweeps.push_back(spec);
    }
    write_text(fs::path(args.out) / "manifest.json", m.to_json().dump(2) + "\n");
    long failed = 0;
    for (const auto& row : grid.data()) {
        failed += row[axes.size()] != "ok";
    }
    std::cout << "sensitivity: " << grid.rows() << " grid points, " << failed << " flagged\n";
    return kOk;
}

int cmd_optimize(const CommonArgs& args, const std::string& modes_arg) {
    const json doc = load_with_overrides(args.config, args.overrides);
    RunConfig cfg = resolve_config(doc);
    if (args.seed_opt != nullptr && args.seed_opt->count() > 0) {
        cfg.ga.seed = args.seed;
    }
    std::set<std::string> modes;
    std::string modes_text = modes_arg;
    if (modes_text.empty()) {
        modes_text = cfg.scenario.num_links >= 2 ? "single,mlo" : "single";
    }
    {
        std::stringstream ss(modes_text);
        std::string m;
        while (std::getline(ss, m, ',')) {
            if (m != "single" && m != "mlo") {
                throw ConfigError("usage: --modes takes 'single', 'mlo' or 'single,mlo'");
            }
            modes.insert(m);
        }
    }
    prepare_out_dir(args.out);

    Problem single;
    single.base = cfg.scenario;
    single.multi_link = false;
    single.analysis = cfg.analysis;
    single.analysis.skip_unconstrained = true;
    Problem multi = single;
    multi.multi_link = true;

    std::vector<ComparisonEntry> entries;
    {
        MloScenario def = cfg.scenario;
        def.all_acs = default_edca(def.all_acs);
        def.num_links = 1;
        def.assignment.assign(def.all_acs.size(), 1);
        Evaluator eval(single);
        entries.push_back({"default", def, eval.evaluate_scenario(def)});
    }

    json summary = json::object();
    std::optional<GaResult> single_res;
    std::optional<GaResult> multi_res;
    if (modes.contains("single") && modes.contains("mlo")) {
        auto cmp = compare_modes(multi, cfg.ga);
        summary["mlo_seeded_with_single"] = cmp.seeded;
        summary["mlo_improved_on_single"] = cmp.multi_improved;
        summary["mlo_dominates_single"] = cmp.dominates;
        single_res = std::move(cmp.single);
        multi_res = std::move(cmp.multi);
    } else if (modes.contains("single")) {
        single_res = ga_optimize(single, cfg.ga);
    } else {
        multi_res = ga_optimize(multi, cfg.ga);
    }

    bool feasible = true;
    const auto emit = [&](const std::string& label, const Problem& pb, const GaResult& res) {
        const MloScenario best = decode(pb, res.best);
        entries.push_back({label, best, res.record});
        history_table(res).write(fs::path(args.out) / ("history_" + label + ".csv"));
        RunConfig out = cfg;
        out.scenario = best;
        write_text(fs::path(args.out) / ("best_" + label + ".json"), to_json(out).dump(2) + "\n");
        summary[label] = {{"fitness", res.record.fitness},
                          {"feasible", res.feasible},
                          {"generations", res.history.size()},
                          {"evaluations", res.evaluations}};
        feasible = res.feasible;
    };
    if (single_res) {
        emit("single", single, *single_res);
    }
    if (multi_res) {
        emit("mlo", multi, *multi_res);
    }

    const auto table = comparison_table(entries);
    table.write(fs::path(args.out) / "comparison.csv");
    write_text(fs::path(args.out) / "summary.json", summary.dump(2) + "\n");
    auto m = manifest_for("optimize", args);
    m.seed = cfg.ga.seed;
    m.modes = modes_text;
    write_text(fs::path(args.out) / "manifest.json", m.to_json().dump(2) + "\n");
    print_table(table);
    if (!feasible) {
        std::cerr << "optimize: no feasible configuration found; best infeasible reported\n";
        return kFailed;
    }
    return kOk;
}

int cmd_validate(const CommonArgs& args, long packets) {
    const json doc = load_with_overrides(args.config, args.overrides);
    const RunConfig cfg = resolve_config(doc);
    prepare_out_dir(args.out);
    SimOptions sim;
    sim.packets_per_ac = packets;
    sim.seed = args.seed;
    std::vector<LinkPartition> parts;
    for (auto& part : split_links(cfg.scenario)) {
        if (!part.empty()) {
            parts.push_back(std::move(part));
        }
    }
    // Links are independent; each simulation gets its own stream.
    std::vector<std::vector<ValidationRow>> per_link(parts.size());
    parallel_for(parts.size(), [&](std::size_t k) {
        SimOptions link_sim = sim;
        link_sim.seed = sim.seed + static_cast<std::uint64_t>(parts[k].link_id - 1);
        per_link[k] = validate_link(parts[k].scenario, cfg.analysis, link_sim, parts[k].link_id,
                                    parts[k].ac_indices);
    });
    std::vector<ValidationRow> rows;
    for (const auto& r : per_link) {
        rows.insert(rows.end(), r.begin(), r.end());
    }
    const auto table = validation_table(rows);
    table.write(fs::path(args.out) / "validation.csv");
    auto m = manifest_for("validate", args);
    m.seed = args.seed;
    m.packets = packets;
    write_text(fs::path(args.out) / "manifest.json", m.to_json().dump(2) + "\n");
    print_table(table);
    const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
    return all ? kOk : kFailed;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Multi-link EDCA QoS analysis and optimization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonArgs analyze_args;
    CommonArgs sens_args;
    CommonArgs opt_args;
    CommonArgs val_args;
    std::vector<std::string> sweeps;
    std::string modes;
    long packets = 100000;

    auto* analyze_cmd = app.add_subcommand("analyze", "per-AC p, c, P_loss, delay tail and CCDF curves");
    add_common(analyze_cmd, analyze_args, false);

    auto* sens_cmd = app.add_subcommand("sensitivity", "grid sweep of AC parameters");
    add_common(sens_cmd, sens_args, false);
    sens_cmd->add_option("--sweep", sweeps,
                         "path=lo:hi:step or path=v1,v2 (repeatable; default AIFSN_2 x TXOP_2)");

    auto* opt_cmd = app.add_subcommand("optimize", "genetic search over EDCA parameters");
    add_common(opt_cmd, opt_args, true);
    opt_cmd->add_option("--modes", modes, "single, mlo or single,mlo");

    auto* val_cmd = app.add_subcommand("validate", "analytic model against Monte Carlo");
    add_common(val_cmd, val_args, true);
    val_cmd->add_option("--packets", packets, "simulated packets per AC")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (analyze_cmd->parsed()) {
            return cmd_analyze(analyze_args);
        }
        if (sens_cmd->parsed()) {
            return cmd_sensitivity(sens_args, sweeps);
        }
        if (opt_cmd->parsed()) {
            return cmd_optimize(opt_args, modes);
        }
        return cmd_validate(val_args, packets);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
}

}  // namespace mledca::cli
