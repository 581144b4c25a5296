#include "advq/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "advq/errors.hpp"
#include "advq/rng.hpp"

namespace advq {

using nlohmann::json;

Algorithm parse_algorithm(const std::string& name) {
    if (name == "ucb_advantage") return Algorithm::kUcbAdvantage;
    if (name == "q_early_settled") return Algorithm::kQEarlySettled;
    if (name == "hoeffding") return Algorithm::kHoeffding;
    throw OutOfRange("algorithm", "unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::kUcbAdvantage: return "ucb_advantage";
        case Algorithm::kQEarlySettled: return "q_early_settled";
        case Algorithm::kHoeffding: return "hoeffding";
    }
    return "unknown";
}

namespace {

const json& require(const json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw MissingField(key);
    return *it;
}

double as_number(const json& value, const std::string& key) {
    if (!value.is_number()) throw OutOfRange(key, "must be a number");
    return value.get<double>();
}

std::int64_t as_integer(const json& value, const std::string& key) {
    if (!value.is_number_integer()) throw OutOfRange(key, "must be an integer");
    return value.get<std::int64_t>();
}

std::uint64_t as_seed(const json& value, const std::string& key) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    throw OutOfRange(key, "must be a nonnegative integer");
}

std::string as_string(const json& value, const std::string& key) {
    if (!value.is_string()) throw OutOfRange(key, "must be a string");
    return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& key) {
    if (!value.is_boolean()) throw OutOfRange(key, "must be a boolean");
    return value.get<bool>();
}

const char* const kKnownKeys[] = {
    "mdp_file",   "mdp_family", "mdp_states",  "mdp_actions",     "mdp_horizon",
    "mdp_min_gap", "mdp_seed",  "algorithm",   "episodes",        "beta",
    "failure_prob", "c_b",      "c0",          "n0_override",     "seed",
    "tie_break",  "iota_inside_sqrt",          "output",
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidConfig(std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidConfig("config must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        bool known = false;
        for (const char* k : kKnownKeys) known = known || key == k;
        if (!known) throw OutOfRange(key, "unrecognized config key");
    }

    ExperimentConfig cfg;
    cfg.algorithm = parse_algorithm(as_string(require(doc, "algorithm"), "algorithm"));

    const std::int64_t episodes = as_integer(require(doc, "episodes"), "episodes");
    if (episodes < 1) throw OutOfRange("episodes", "must be >= 1");
    cfg.episodes = static_cast<int>(episodes);

    cfg.beta = as_number(require(doc, "beta"), "beta");
    if (!(cfg.beta > 0.0)) throw OutOfRange("beta", "must lie in (0, H]");

    cfg.seed = as_seed(require(doc, "seed"), "seed");

    const bool has_file = doc.contains("mdp_file");
    const bool has_family = doc.contains("mdp_family");
    if (!has_file && !has_family) throw MissingField("mdp");
    if (has_file && has_family)
        throw OutOfRange("mdp", "give either mdp_file or mdp_family, not both");

    if (has_file) {
        cfg.mdp.file = as_string(doc["mdp_file"], "mdp_file");
        for (const char* k : {"mdp_states", "mdp_actions", "mdp_horizon", "mdp_min_gap"})
            if (doc.contains(k)) throw OutOfRange(k, "only valid with mdp_family");
    } else {
        cfg.mdp.family = parse_family(as_string(doc["mdp_family"], "mdp_family"));
        const std::int64_t s = as_integer(require(doc, "mdp_states"), "mdp_states");
        const std::int64_t a = as_integer(require(doc, "mdp_actions"), "mdp_actions");
        const std::int64_t h = as_integer(require(doc, "mdp_horizon"), "mdp_horizon");
        if (s < 1 || a < 1 || h < 1)
            throw OutOfRange("mdp_states", "generator dimensions must be >= 1");
        cfg.mdp.params.num_states = static_cast<int>(s);
        cfg.mdp.params.num_actions = static_cast<int>(a);
        cfg.mdp.params.horizon = static_cast<int>(h);
        if (doc.contains("mdp_min_gap")) {
            cfg.mdp.params.min_gap = as_number(doc["mdp_min_gap"], "mdp_min_gap");
            if (cfg.mdp.params.min_gap < 0.0) throw OutOfRange("mdp_min_gap", "must be >= 0");
        }
        if (cfg.beta > static_cast<double>(h)) throw OutOfRange("beta", "must lie in (0, H]");
    }
    cfg.mdp.seed = doc.contains("mdp_seed") ? as_seed(doc["mdp_seed"], "mdp_seed") : cfg.seed;

    if (doc.contains("failure_prob")) {
        cfg.failure_prob = as_number(doc["failure_prob"], "failure_prob");
        if (!(cfg.failure_prob > 0.0 && cfg.failure_prob < 1.0))
            throw OutOfRange("failure_prob", "must lie in (0, 1)");
    }
    if (doc.contains("c_b")) {
        cfg.c_b = as_number(doc["c_b"], "c_b");
        if (cfg.c_b < 0.0) throw OutOfRange("c_b", "must be >= 0");
    }
    if (doc.contains("c0")) {
        cfg.c0 = as_number(doc["c0"], "c0");
        if (!(cfg.c0 > 0.0)) throw OutOfRange("c0", "must be > 0");
    }
    if (doc.contains("n0_override"))
        cfg.n0_override = as_integer(doc["n0_override"], "n0_override");
    if (doc.contains("tie_break")) {
        cfg.tie_break = as_string(doc["tie_break"], "tie_break");
        if (cfg.tie_break != "smallest_index")
            throw OutOfRange("tie_break", "only smallest_index is supported");
    }
    if (doc.contains("iota_inside_sqrt"))
        cfg.iota_inside_sqrt = as_bool(doc["iota_inside_sqrt"], "iota_inside_sqrt");
    if (doc.contains("output")) cfg.output = as_string(doc["output"], "output");

    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string ExperimentConfig::canonical_text() const {
    json doc;
    doc["algorithm"] = algorithm_name(algorithm);
    doc["episodes"] = episodes;
    doc["beta"] = beta;
    doc["failure_prob"] = failure_prob;
    doc["c_b"] = c_b;
    doc["c0"] = c0;
    doc["n0_override"] = n0_override;
    doc["seed"] = seed;
    doc["tie_break"] = tie_break;
    doc["iota_inside_sqrt"] = iota_inside_sqrt;
    doc["output"] = output;
    if (mdp.from_file()) {
        doc["mdp_file"] = mdp.file;
    } else {
        doc["mdp_family"] = family_name(mdp.family);
        doc["mdp_states"] = mdp.params.num_states;
        doc["mdp_actions"] = mdp.params.num_actions;
        doc["mdp_horizon"] = mdp.params.horizon;
        doc["mdp_min_gap"] = mdp.params.min_gap;
    }
    doc["mdp_seed"] = mdp.seed;
    return doc.dump();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical_text()); }

}  // namespace advq
