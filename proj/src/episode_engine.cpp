#include "advq/episode_engine.hpp"

#include <span>

#include "advq/errors.hpp"
#include "advq/hoeffding.hpp"
#include "advq/q_early_settled.hpp"
#include "advq/ucb_advantage.hpp"

namespace advq {

Policy greedy_policy(const Agent& agent, int num_states, int horizon) {
    Policy policy(static_cast<std::size_t>(horizon) * num_states);
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s) policy[h * num_states + s] = agent.select_action(h, s);
    return policy;
}

double episode_regret(const OptimalSolution& solution, const MdpSpec& spec,
                      const Policy& policy_k, int s1) {
    const std::vector<double> v_pi = evaluate_policy(spec, policy_k);
    return solution.v_star[s1] - v_pi[s1];
}

std::int64_t switching_cost(const Policy& a, const Policy& b) {
    if (a.size() != b.size()) throw BadDimensions("policies cover different (s,h) grids");
    std::int64_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) count += (a[i] != b[i]);
    return count;
}

std::vector<StepRecord> run_episode(const MdpSpec& spec, Agent& agent, int s1, Rng& rng,
                                    const StepHook& after_select) {
    std::vector<StepRecord> trace;
    trace.reserve(spec.horizon);
    int s = s1;
    for (int h = 0; h < spec.horizon; ++h) {
        const int a = agent.select_action(h, s);
        if (after_select) after_select(h, s, a);
        const double r = spec.reward(h, s, a);
        const int s_next = rng.categorical(
            std::span<const double>(spec.transition_row(h, s, a), spec.num_states));
        agent.observe_transition(h, s, a, r, s_next);
        trace.push_back({s, a, r});
        s = s_next;
    }
    return trace;
}

RunRecord run_loop(const MdpSpec& spec, const OptimalSolution& solution, Agent& agent,
                   int episodes, std::uint64_t seed, const EpisodeObserver& observer) {
    if (episodes < 1) throw InvalidConfig("episodes must be >= 1");

    RunRecord rec;
    rec.seed = seed;
    rec.num_states = spec.num_states;
    rec.num_actions = spec.num_actions;
    rec.horizon = spec.horizon;
    rec.episodes = episodes;
    rec.delta_min = solution.delta_min;
    rec.qvar_max = solution.qvar_max;
    rec.d_opt_size = solution.d_opt_size;
    rec.d_opt_complement = solution.d_opt_complement_size();
    rec.per_episode_regret.reserve(episodes);
    rec.cumulative_regret.reserve(episodes);
    rec.switch_local.reserve(episodes);
    rec.cumulative_switch.reserve(episodes);
    rec.settled_fraction.reserve(episodes);
    rec.visits_opt.reserve(episodes);
    rec.visits_subopt.reserve(episodes);

    Rng rng(seed);
    Policy prev_policy;
    std::vector<double> v_pi;
    long long prev_updates = 0;
    double regret_sum = 0.0;
    std::int64_t switch_sum = 0, opt_visits = 0, subopt_visits = 0;

    for (int k = 0; k < episodes; ++k) {
        const Policy policy = greedy_policy(agent, spec.num_states, spec.horizon);

        std::int64_t local = 0;
        if (k > 0) {
            local = switching_cost(prev_policy, policy);
            if (local > 0 && prev_updates == 0)
                throw Error("greedy policy changed after an episode with no Q update");
        }
        if (k == 0 || local > 0) v_pi = evaluate_policy(spec, policy);

        const int s1 = rng.categorical(spec.initial_state_dist);
        const double regret = solution.v_star[s1] - v_pi[s1];

        agent.begin_episode();
        run_episode(spec, agent, s1, rng, [&](int h, int s, int a) {
            if (solution.optimal_action[(h * spec.num_states + s) * spec.num_actions + a])
                ++opt_visits;
            else
                ++subopt_visits;
            if (agent.q(h, s, a) >= solution.q_star[(h * spec.num_states + s) * spec.num_actions + a] -
                                        1e-9)
                ++rec.optimism_hits;
            ++rec.optimism_total;
        });
        prev_updates = agent.q_updates_this_episode();

        regret_sum += regret;
        switch_sum += local;
        rec.per_episode_regret.push_back(regret);
        rec.cumulative_regret.push_back(regret_sum);
        rec.switch_local.push_back(local);
        rec.cumulative_switch.push_back(switch_sum);
        rec.settled_fraction.push_back(agent.settled_fraction());
        rec.visits_opt.push_back(opt_visits);
        rec.visits_subopt.push_back(subopt_visits);

        if (observer) observer(k, agent, policy);
        prev_policy = policy;
    }
    return rec;
}

MdpSpec make_mdp(const ExperimentConfig& config) {
    if (config.mdp.from_file()) return load_mdp(config.mdp.file);
    return generate_mdp(config.mdp.family, config.mdp.params, config.mdp.seed);
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, const MdpSpec& spec) {
    if (!(config.beta > 0.0 && config.beta <= spec.horizon))
        throw OutOfRange("beta", "must lie in (0, H]");
    const std::int64_t total_steps =
        static_cast<std::int64_t>(config.episodes) * spec.horizon;
    switch (config.algorithm) {
        case Algorithm::kUcbAdvantage: {
            UcbAdvantageParams p;
            p.beta = config.beta;
            p.failure_prob = config.failure_prob;
            p.c0 = config.c0;
            p.n0_override = config.n0_override;
            p.iota_inside_sqrt = config.iota_inside_sqrt;
            return std::make_unique<UcbAdvantageAgent>(spec.num_states, spec.num_actions,
                                                       spec.horizon, p);
        }
        case Algorithm::kQEarlySettled: {
            QesParams p;
            p.beta = config.beta;
            p.delta = config.failure_prob;
            p.c_b = config.c_b;
            return std::make_unique<QEarlySettledAgent>(spec.num_states, spec.num_actions,
                                                        spec.horizon, total_steps, p);
        }
        case Algorithm::kHoeffding: {
            HoeffdingParams p;
            p.delta = config.failure_prob;
            p.c_b = config.c_b;
            return std::make_unique<HoeffdingAgent>(spec.num_states, spec.num_actions,
                                                    spec.horizon, total_steps, p);
        }
    }
    throw InvalidConfig("unknown algorithm");
}

ExperimentResult run_experiment(const ExperimentConfig& config, const EpisodeObserver& observer) {
    ExperimentResult result;
    result.spec = make_mdp(config);
    validate_mdp(result.spec);
    result.solution = solve_optimal(result.spec);
    std::unique_ptr<Agent> agent = make_agent(config, result.spec);
    result.record =
        run_loop(result.spec, result.solution, *agent, config.episodes, config.seed, observer);
    result.record.config_hash = config.hash();
    return result;
}

}  // namespace advq
