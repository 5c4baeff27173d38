#include "mledca/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mledca {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
}

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        return;
    }
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

// Integers must be written as integers; 4.5 for an AIFSN is an error, not 4.
void read_int(const json& j, const char* key, int& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        return;
    }
    if (!it->is_number_integer()) {
        throw ConfigError(where + "." + key + ": expected an integer");
    }
    out = it->get<int>();
}

PhyProfile parse_phy(const json& j) {
    const std::string where = "phy";
    require_object(j, where);
    reject_unknown(j, where,
                   {"slot_us", "delta_us", "sifs_us", "phy_header_us", "data_rate_mbps",
                    "ctrl_rate_mbps", "rts_bits", "cts_bits", "ack_bits", "mac_header_bits"});
    PhyProfile phy;
    read(j, "slot_us", phy.slot_us, where);
    read(j, "delta_us", phy.delta_us, where);
    read(j, "sifs_us", phy.sifs_us, where);
    read(j, "phy_header_us", phy.phy_header_us, where);
    read(j, "data_rate_mbps", phy.data_rate, where);
    read(j, "ctrl_rate_mbps", phy.ctrl_rate, where);
    read(j, "rts_bits", phy.rts_bits, where);
    read(j, "cts_bits", phy.cts_bits, where);
    read(j, "ack_bits", phy.ack_bits, where);
    read(j, "mac_header_bits", phy.mac_header_bits, where);
    return phy;
}

AcEdcaConfig parse_ac(const json& j, std::size_t index) {
    const std::string where = "acs[" + std::to_string(index) + "]";
    require_object(j, where);
    reject_unknown(j, where,
                   {"name", "cw_min", "cw_max", "aifsn", "txop_us", "retry_limit", "stations",
                    "payload_bytes", "dmax_ms", "epsilon"});
    AcEdcaConfig ac;
    ac.name = "AC" + std::to_string(index + 1);
    read(j, "name", ac.name, where);
    read_int(j, "cw_min", ac.cw_min, where);
    read_int(j, "cw_max", ac.cw_max, where);
    read_int(j, "aifsn", ac.aifsn, where);
    read_int(j, "txop_us", ac.txop_us, where);
    read_int(j, "retry_limit", ac.retry_limit, where);
    read_int(j, "stations", ac.n_stations, where);
    double bytes = ac.payload_bits / 8.0;
    read(j, "payload_bytes", bytes, where);
    ac.payload_bits = 8.0 * bytes;
    read(j, "dmax_ms", ac.delay_bound_ms, where);
    read(j, "epsilon", ac.violation_threshold, where);
    return ac;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    require_object(doc, "config");
    reject_unknown(doc, "config",
                   {"phy", "links", "assignment", "acs", "solver", "inversion", "ga", "comment"});
    RunConfig cfg;
    auto& s = cfg.scenario;
    if (doc.contains("phy")) {
        s.phy = parse_phy(doc["phy"]);
    }
    read_int(doc, "links", s.num_links, "config");

    if (!doc.contains("acs") || !doc["acs"].is_array()) {
        throw ConfigError("config: 'acs' list is required");
    }
    for (std::size_t i = 0; i < doc["acs"].size(); ++i) {
        s.all_acs.push_back(parse_ac(doc["acs"][i], i));
    }
    if (doc.contains("assignment")) {
        const auto& a = doc["assignment"];
        if (!a.is_array()) {
            throw ConfigError("assignment: expected a list of link ids");
        }
        for (const auto& v : a) {
            if (!v.is_number_integer()) {
                throw ConfigError("assignment: link ids must be integers");
            }
            s.assignment.push_back(v.get<int>());
        }
    } else {
        s.assignment.assign(s.all_acs.size(), 1);
    }

    if (doc.contains("solver")) {
        const auto& j = doc["solver"];
        require_object(j, "solver");
        reject_unknown(j, "solver", {"damping", "tolerance", "max_iter"});
        read(j, "damping", cfg.analysis.solver.damping, "solver");
        read(j, "tolerance", cfg.analysis.solver.tolerance, "solver");
        read_int(j, "max_iter", cfg.analysis.solver.max_iter, "solver");
    }
    if (doc.contains("inversion")) {
        const auto& j = doc["inversion"];
        require_object(j, "inversion");
        reject_unknown(j, "inversion", {"gamma", "l", "radius", "theta_cap"});
        auto& inv = cfg.analysis.inversion;
        read(j, "gamma", inv.gamma, "inversion");
        read_int(j, "l", inv.l, "inversion");
        if (j.contains("radius") && !j["radius"].is_null()) {
            double r = 0.0;
            read(j, "radius", r, "inversion");
            if (!(r > 0.0 && r < 1.0)) {
                throw ConfigError("inversion.radius: must lie in (0, 1)");
            }
            inv.radius = r;
        }
        read(j, "theta_cap", inv.theta_cap, "inversion");
    }
    if (doc.contains("ga")) {
        const auto& j = doc["ga"];
        require_object(j, "ga");
        reject_unknown(j, "ga",
                       {"population", "generations", "crossover", "elite", "stagnation",
                        "mutation_rate", "tournament", "seed"});
        auto& ga = cfg.ga;
        read_int(j, "population", ga.population, "ga");
        read_int(j, "generations", ga.generations, "ga");
        read(j, "crossover", ga.crossover, "ga");
        read_int(j, "elite", ga.elite, "ga");
        read_int(j, "stagnation", ga.stagnation, "ga");
        read(j, "mutation_rate", ga.mutation_rate, "ga");
        read_int(j, "tournament", ga.tournament, "ga");
        read(j, "seed", ga.seed, "ga");
        if (ga.population < 1 || ga.elite < 0 || ga.elite >= ga.population) {
            throw ConfigError("ga: need population >= 1 and 0 <= elite < population");
        }
        if (!(ga.crossover >= 0.0 && ga.crossover <= 1.0) || ga.mutation_rate > 1.0) {
            throw ConfigError("ga: rates must lie in [0, 1]");
        }
        if (ga.tournament < 1 || ga.generations < 1 || ga.stagnation < 1) {
            throw ConfigError("ga: tournament, generations and stagnation must be positive");
        }
    }
    return cfg;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

RunConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

json to_json(const AcEdcaConfig& ac) {
    return json{{"name", ac.name},
                {"cw_min", ac.cw_min},
                {"cw_max", ac.cw_max},
                {"aifsn", ac.aifsn},
                {"txop_us", ac.txop_us},
                {"retry_limit", ac.retry_limit},
                {"stations", ac.n_stations},
                {"payload_bytes", ac.payload_bits / 8.0},
                {"dmax_ms", ac.delay_bound_ms},
                {"epsilon", ac.violation_threshold}};
}

json to_json(const RunConfig& config) {
    const auto& s = config.scenario;
    json acs = json::array();
    for (const auto& ac : s.all_acs) {
        acs.push_back(to_json(ac));
    }
    json inversion{{"gamma", config.analysis.inversion.gamma},
                   {"l", config.analysis.inversion.l},
                   {"theta_cap", config.analysis.inversion.theta_cap}};
    if (config.analysis.inversion.radius) {
        inversion["radius"] = *config.analysis.inversion.radius;
    }
    const auto& ga = config.ga;
    return json{
        {"phy",
         {{"slot_us", s.phy.slot_us},
          {"delta_us", s.phy.delta_us},
          {"sifs_us", s.phy.sifs_us},
          {"phy_header_us", s.phy.phy_header_us},
          {"data_rate_mbps", s.phy.data_rate},
          {"ctrl_rate_mbps", s.phy.ctrl_rate},
          {"rts_bits", s.phy.rts_bits},
          {"cts_bits", s.phy.cts_bits},
          {"ack_bits", s.phy.ack_bits},
          {"mac_header_bits", s.phy.mac_header_bits}}},
        {"links", s.num_links},
        {"assignment", s.assignment},
        {"acs", acs},
        {"solver",
         {{"damping", config.analysis.solver.damping},
          {"tolerance", config.analysis.solver.tolerance},
          {"max_iter", config.analysis.solver.max_iter}}},
        {"inversion", inversion},
        {"ga",
         {{"population", ga.population},
          {"generations", ga.generations},
          {"crossover", ga.crossover},
          {"elite", ga.elite},
          {"stagnation", ga.stagnation},
          {"mutation_rate", ga.mutation_rate},
          {"tournament", ga.tournament},
          {"seed", ga.seed}}}};
}

void set_path(json& doc, const std::string& path, const json& value) {
    json* node = &doc;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        std::string key = part;
        std::vector<long> indices;
        if (auto open = part.find('['); open != std::string::npos) {
            key = part.substr(0, open);
            std::size_t pos = open;
            while (pos < part.size() && part[pos] == '[') {
                const auto close = part.find(']', pos);
                if (close == std::string::npos) {
                    throw ConfigError("override path '" + path + "': unbalanced brackets");
                }
                try {
                    indices.push_back(std::stol(part.substr(pos + 1, close - pos - 1)));
                } catch (const std::exception&) {
                    throw ConfigError("override path '" + path + "': bad index");
                }
                pos = close + 1;
            }
            if (pos != part.size()) {
                throw ConfigError("override path '" + path + "': trailing characters");
            }
        }
        if (key.empty()) {
            throw ConfigError("override path '" + path + "': empty key");
        }
        // Missing sections are created; the strict parse afterwards rejects unknown keys.
        if (!node->is_object() && !node->is_null()) {
            throw ConfigError("override path '" + path + "': '" + key + "' is not inside an object");
        }
        node = &(*node)[key];
        for (long idx : indices) {
            if (!node->is_array() || idx < 0 || static_cast<std::size_t>(idx) >= node->size()) {
                throw ConfigError("override path '" + path + "': index " + std::to_string(idx) +
                                  " out of range");
            }
            node = &(*node)[static_cast<std::size_t>(idx)];
        }
    }
    *node = value;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "': expected key=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    set_path(doc, path, value);
}

}  // namespace mledca
