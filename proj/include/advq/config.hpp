#pragma once

#include <cstdint>
#include <string>

#include "advq/mdp.hpp"

namespace advq {

enum class Algorithm { kUcbAdvantage, kQEarlySettled, kHoeffding };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algorithm);

// Where the run's MDP comes from: a JSON file, or a generator family with
// its own seed so the instance is independent of the run seed.
struct MdpSource {
    std::string file;  // non-empty selects file loading
    MdpFamily family = MdpFamily::kRandomStochastic;
    GeneratorParams params;
    std::uint64_t seed = 0;

    bool from_file() const { return !file.empty(); }
};

struct ExperimentConfig {
    MdpSource mdp;
    Algorithm algorithm = Algorithm::kUcbAdvantage;
    int episodes = 1;
    double beta = 1.0;
    double failure_prob = 0.01;  // p (UCB-Advantage) or delta (the others)
    double c_b = 1.0;
    double c0 = 1.0;
    std::int64_t n0_override = -1;
    std::uint64_t seed = 0;
    std::string tie_break = "smallest_index";
    bool iota_inside_sqrt = false;
    std::string output;  // trace CSV path; empty lets the caller choose

    // Canonical JSON with every field resolved, used for hashing so two
    // documents that parse identically hash identically.
    std::string canonical_text() const;
    std::uint64_t hash() const;
};

// Flat key-value JSON. Required: algorithm, episodes, beta, seed, and an MDP
// source (mdp_file, or mdp_family with mdp_states/mdp_actions/mdp_horizon).
// Unknown keys are rejected. Missing optional keys take their defaults.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace advq
