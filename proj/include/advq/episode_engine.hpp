#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "advq/agent.hpp"
#include "advq/config.hpp"
#include "advq/mdp.hpp"
#include "advq/rng.hpp"

namespace advq {

// Everything one seeded run produces. The per-episode vectors all have
// length K; switch and visit entries are cumulative where named so.
struct RunRecord {
    std::vector<double> per_episode_regret;
    std::vector<double> cumulative_regret;
    std::vector<std::int64_t> switch_local;  // entry k is the diff to episode k-1; first is 0
    std::vector<std::int64_t> cumulative_switch;
    std::vector<double> settled_fraction;
    std::vector<std::int64_t> visits_opt;     // cumulative visits to optimal triples
    std::vector<std::int64_t> visits_subopt;  // cumulative visits to suboptimal triples

    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;

    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    int episodes = 0;
    double delta_min = 0.0;
    double qvar_max = 0.0;
    std::int64_t d_opt_size = 0;
    std::int64_t d_opt_complement = 0;

    // Visited (k,h,s,a) where the agent's Q at selection time was >= Qstar
    // (1e-9 slack), over all visited steps.
    std::int64_t optimism_hits = 0;
    std::int64_t optimism_total = 0;

    std::int64_t total_switches() const {
        return cumulative_switch.empty() ? 0 : cumulative_switch.back();
    }
    double total_regret() const {
        return cumulative_regret.empty() ? 0.0 : cumulative_regret.back();
    }
};

// Greedy policy snapshot from the agent's current Q tables.
Policy greedy_policy(const Agent& agent, int num_states, int horizon);

// Exact shortfall of policy_k at the episode's initial state.
double episode_regret(const OptimalSolution& solution, const MdpSpec& spec,
                      const Policy& policy_k, int s1);

// Number of (s,h) cells where the two policies pick different actions.
std::int64_t switching_cost(const Policy& a, const Policy& b);

struct StepRecord {
    int state;
    int action;
    double reward;
};

using StepHook = std::function<void(int h, int s, int a)>;

// Plays one episode: select, reward, sample next state, observe. The hook,
// when set, fires after each selection and before the agent updates.
std::vector<StepRecord> run_episode(const MdpSpec& spec, Agent& agent, int s1, Rng& rng,
                                    const StepHook& after_select = {});

using EpisodeObserver =
    std::function<void(int episode, const Agent& agent, const Policy& policy)>;

// K episodes against a solved MDP. The observer, when set, fires after each
// episode with the policy snapshot that episode started from.
RunRecord run_loop(const MdpSpec& spec, const OptimalSolution& solution, Agent& agent,
                   int episodes, std::uint64_t seed, const EpisodeObserver& observer = {});

// Builds the configured agent for this MDP (validates beta against H here,
// where the horizon is finally known).
std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const MdpSpec& spec);

// Loads or generates the configured MDP.
MdpSpec make_mdp(const ExperimentConfig& config);

struct ExperimentResult {
    MdpSpec spec;
    OptimalSolution solution;
    RunRecord record;
};

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const EpisodeObserver& observer = {});

}  // namespace advq
