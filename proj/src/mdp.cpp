#include "advq/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "advq/errors.hpp"
#include "advq/rng.hpp"
#include "json.hpp"

namespace advq {

const MdpSpec& validate_mdp(const MdpSpec& spec) {
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    if (S < 1 || A < 1 || H < 1) throw BadDimensions("S, A and H must all be positive");
    const std::size_t n_sa = static_cast<std::size_t>(H) * S * A;
    if (spec.rewards.size() != n_sa) throw BadDimensions("rewards table has wrong size");
    if (spec.transitions.size() != n_sa * S) throw BadDimensions("transition table has wrong size");
    if (spec.initial_state_dist.size() != static_cast<std::size_t>(S))
        throw BadDimensions("initial state distribution has wrong size");

    for (int h = 0; h < H; ++h) {
        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                const double r = spec.reward(h, s, a);
                if (!(r >= 0.0 && r <= 1.0)) throw RewardOutOfRange(h, s, a, r);
                const double* row = spec.transition_row(h, s, a);
                double sum = 0.0;
                for (int t = 0; t < S; ++t) {
                    if (row[t] < 0.0) throw RowNotStochastic(h, s, a, row[t]);
                    sum += row[t];
                }
                if (std::abs(sum - 1.0) > kStochasticTolerance)
                    throw RowNotStochastic(h, s, a, sum);
            }
        }
    }
    double init_sum = 0.0;
    for (double p : spec.initial_state_dist) {
        if (p < 0.0) throw BadDimensions("initial state distribution has a negative entry");
        init_sum += p;
    }
    if (std::abs(init_sum - 1.0) > kStochasticTolerance)
        throw BadDimensions("initial state distribution sums to " + std::to_string(init_sum));
    return spec;
}

OptimalSolution solve_optimal_allow_degenerate(const MdpSpec& spec) {
    const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
    OptimalSolution sol;
    sol.num_states = S;
    sol.num_actions = A;
    sol.horizon = H;
    sol.q_star.assign(static_cast<std::size_t>(H) * S * A, 0.0);
    sol.v_star.assign(static_cast<std::size_t>(H + 1) * S, 0.0);
    sol.gaps.assign(sol.q_star.size(), 0.0);
    sol.optimal_action.assign(sol.q_star.size(), 0);

    for (int h = H - 1; h >= 0; --h) {
        for (int s = 0; s < S; ++s) {
            double best = -1.0;
            for (int a = 0; a < A; ++a) {
                const double* row = spec.transition_row(h, s, a);
                double exp_next = 0.0, exp_next_sq = 0.0;
                for (int t = 0; t < S; ++t) {
                    const double v_next = sol.v_star[(h + 1) * S + t];
                    exp_next += row[t] * v_next;
                    exp_next_sq += row[t] * v_next * v_next;
                }
                const double q = spec.reward(h, s, a) + exp_next;
                sol.q_star[sol.sa_index(h, s, a)] = q;
                best = std::max(best, q);
                sol.qvar_max = std::max(sol.qvar_max, exp_next_sq - exp_next * exp_next);
            }
            sol.v_star[h * S + s] = best;
        }
    }

    double delta_min = 0.0;
    for (int h = 0; h < H; ++h) {
        for (int s = 0; s < S; ++s) {
            const double v = sol.v_star[h * S + s];
            for (int a = 0; a < A; ++a) {
                const int i = sol.sa_index(h, s, a);
                const double gap = v - sol.q_star[i];
                sol.gaps[i] = gap;
                if (gap <= kGapTieTolerance) {
                    sol.optimal_action[i] = 1;
                    ++sol.d_opt_size;
                } else if (delta_min == 0.0 || gap < delta_min) {
                    delta_min = gap;
                }
            }
        }
    }
    sol.delta_min = delta_min;
    return sol;
}

OptimalSolution solve_optimal(const MdpSpec& spec) {
    OptimalSolution sol = solve_optimal_allow_degenerate(spec);
    if (sol.delta_min <= 0.0)
        throw DegenerateMdp("every action is optimal at every (s,h); no positive gap");
    return sol;
}

std::vector<double> evaluate_policy(const MdpSpec& spec, const Policy& policy) {
    const int S = spec.num_states, H = spec.horizon;
    if (policy.size() != static_cast<std::size_t>(H) * S)
        throw BadDimensions("policy must cover every (h,s)");
    for (int a : policy)
        if (a < 0 || a >= spec.num_actions)
            throw BadDimensions("policy action out of range");
    std::vector<double> values(static_cast<std::size_t>(H + 1) * S, 0.0);
    for (int h = H - 1; h >= 0; --h) {
        for (int s = 0; s < S; ++s) {
            const int a = policy[h * S + s];
            const double* row = spec.transition_row(h, s, a);
            double exp_next = 0.0;
            for (int t = 0; t < S; ++t) exp_next += row[t] * values[(h + 1) * S + t];
            values[h * S + s] = spec.reward(h, s, a) + exp_next;
        }
    }
    return values;
}

namespace {

void fill_dirichlet_row(Rng& rng, double* row, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        row[i] = rng.exponential();
        sum += row[i];
    }
    if (sum < 1e-300) {
        for (int i = 0; i < n; ++i) row[i] = 1.0 / n;
        return;
    }
    for (int i = 0; i < n; ++i) row[i] /= sum;
}

// Smallest multiple of 1/64 at or above the requested floor. Rewards drawn
// from this grid keep every value sum an exact dyadic rational, so positive
// gaps are exact multiples of the spacing and never undershoot the floor
// through rounding.
double dyadic_spacing(double min_gap) {
    const double d = std::ceil(min_gap * 64.0) / 64.0;
    return std::min(d, 1.0);
}

MdpSpec candidate_random_stochastic(Rng& rng, const GeneratorParams& p) {
    MdpSpec spec;
    spec.num_states = p.num_states;
    spec.num_actions = p.num_actions;
    spec.horizon = p.horizon;
    const std::size_t n_sa = static_cast<std::size_t>(p.horizon) * p.num_states * p.num_actions;
    spec.rewards.resize(n_sa);
    spec.transitions.assign(n_sa * p.num_states, 0.0);
    for (std::size_t i = 0; i < n_sa; ++i) spec.rewards[i] = rng.uniform();
    for (std::size_t i = 0; i < n_sa; ++i)
        fill_dirichlet_row(rng, spec.transitions.data() + i * p.num_states, p.num_states);
    spec.initial_state_dist.assign(p.num_states, 1.0 / p.num_states);
    return spec;
}

MdpSpec candidate_deterministic_chain(Rng& rng, const GeneratorParams& p) {
    MdpSpec spec;
    spec.num_states = p.num_states;
    spec.num_actions = p.num_actions;
    spec.horizon = p.horizon;
    const std::size_t n_sa = static_cast<std::size_t>(p.horizon) * p.num_states * p.num_actions;
    spec.rewards.resize(n_sa);
    spec.transitions.assign(n_sa * p.num_states, 0.0);
    if (p.min_gap > 0.0) {
        // Quantized rewards so that rejection on the gap floor succeeds fast.
        const double d = dyadic_spacing(p.min_gap);
        const int levels = static_cast<int>(std::floor(1.0 / d)) + 1;
        for (std::size_t i = 0; i < n_sa; ++i) spec.rewards[i] = d * rng.uniform_int(levels);
    } else {
        for (std::size_t i = 0; i < n_sa; ++i) spec.rewards[i] = rng.uniform();
    }
    for (std::size_t i = 0; i < n_sa; ++i) {
        const int next = rng.uniform_int(p.num_states);
        spec.transitions[i * p.num_states + next] = 1.0;
    }
    spec.initial_state_dist.assign(p.num_states, 0.0);
    spec.initial_state_dist[0] = 1.0;
    return spec;
}

// One designated best action per (h,s): all actions at a cell share one
// transition row, and every other action's reward trails the best by at
// least the margin, so the gap table is exactly the reward margins.
MdpSpec candidate_unique_optimal(Rng& rng, const GeneratorParams& p, double margin) {
    MdpSpec spec;
    spec.num_states = p.num_states;
    spec.num_actions = p.num_actions;
    spec.horizon = p.horizon;
    const std::size_t n_sa = static_cast<std::size_t>(p.horizon) * p.num_states * p.num_actions;
    spec.rewards.resize(n_sa);
    spec.transitions.assign(n_sa * p.num_states, 0.0);
    std::vector<double> shared_row(p.num_states);
    for (int h = 0; h < p.horizon; ++h) {
        for (int s = 0; s < p.num_states; ++s) {
            fill_dirichlet_row(rng, shared_row.data(), p.num_states);
            const int best = rng.uniform_int(p.num_actions);
            const double r_best = rng.uniform(margin, 1.0);
            for (int a = 0; a < p.num_actions; ++a) {
                const int i = spec.sa_index(h, s, a);
                spec.rewards[i] = (a == best) ? r_best : rng.uniform(0.0, r_best - margin);
                std::copy(shared_row.begin(), shared_row.end(),
                          spec.transitions.begin() + static_cast<std::size_t>(i) * p.num_states);
            }
        }
    }
    spec.initial_state_dist.assign(p.num_states, 1.0 / p.num_states);
    return spec;
}

}  // namespace

MdpSpec generate_mdp(MdpFamily family, const GeneratorParams& params, std::uint64_t seed) {
    if (params.num_states < 1 || params.num_actions < 1 || params.horizon < 1)
        throw BadDimensions("generator dimensions must be positive");
    if (family == MdpFamily::kUniqueOptimal && params.num_actions < 2)
        throw BadDimensions("unique_optimal needs at least two actions");
    Rng rng(seed);
    const double floor = params.min_gap;
    for (int attempt = 0; attempt < params.max_retries; ++attempt) {
        MdpSpec spec;
        switch (family) {
            case MdpFamily::kRandomStochastic:
                spec = candidate_random_stochastic(rng, params);
                break;
            case MdpFamily::kDeterministicChain:
                spec = candidate_deterministic_chain(rng, params);
                break;
            case MdpFamily::kUniqueOptimal:
                spec = candidate_unique_optimal(rng, params, floor > 0.0 ? floor : 0.1);
                break;
        }
        validate_mdp(spec);
        const OptimalSolution sol = solve_optimal_allow_degenerate(spec);
        if (sol.delta_min <= 0.0) continue;
        if (floor > 0.0 && sol.delta_min < floor) continue;
        if (family == MdpFamily::kUniqueOptimal &&
            sol.d_opt_size != static_cast<long long>(params.num_states) * params.horizon)
            continue;
        return spec;
    }
    throw GenerationFailed("no candidate met the gap floor within " +
                           std::to_string(params.max_retries) + " attempts");
}

MdpFamily parse_family(const std::string& name) {
    if (name == "random_stochastic") return MdpFamily::kRandomStochastic;
    if (name == "deterministic_chain") return MdpFamily::kDeterministicChain;
    if (name == "unique_optimal") return MdpFamily::kUniqueOptimal;
    throw OutOfRange("mdp_family", "unknown family '" + name + "'");
}

std::string family_name(MdpFamily family) {
    switch (family) {
        case MdpFamily::kRandomStochastic: return "random_stochastic";
        case MdpFamily::kDeterministicChain: return "deterministic_chain";
        case MdpFamily::kUniqueOptimal: return "unique_optimal";
    }
    return "?";
}

MdpSpec mdp_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw BadDimensions(std::string("MDP file is not valid JSON: ") + e.what());
    }
    MdpSpec spec;
    try {
        spec.num_states = j.at("S").get<int>();
        spec.num_actions = j.at("A").get<int>();
        spec.horizon = j.at("H").get<int>();
        for (const auto& per_h : j.at("rewards"))
            for (const auto& per_s : per_h)
                for (const auto& v : per_s) {
                    if (!v.is_number()) throw BadDimensions("rewards must be numeric");
                    spec.rewards.push_back(v.get<double>());
                }
        for (const auto& per_h : j.at("transitions"))
            for (const auto& per_s : per_h)
                for (const auto& per_a : per_s)
                    for (const auto& v : per_a) spec.transitions.push_back(v.get<double>());
        for (const auto& v : j.at("initial_state_dist"))
            spec.initial_state_dist.push_back(v.get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw BadDimensions(std::string("malformed MDP document: ") + e.what());
    }
    validate_mdp(spec);
    return spec;
}

MdpSpec load_mdp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open MDP file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return mdp_from_json_text(buf.str());
}

std::string mdp_to_json_text(const MdpSpec& spec) {
    nlohmann::json j;
    j["S"] = spec.num_states;
    j["A"] = spec.num_actions;
    j["H"] = spec.horizon;
    auto rewards = nlohmann::json::array();
    auto transitions = nlohmann::json::array();
    for (int h = 0; h < spec.horizon; ++h) {
        auto rh = nlohmann::json::array();
        auto th = nlohmann::json::array();
        for (int s = 0; s < spec.num_states; ++s) {
            auto rs = nlohmann::json::array();
            auto ts = nlohmann::json::array();
            for (int a = 0; a < spec.num_actions; ++a) {
                rs.push_back(spec.reward(h, s, a));
                const double* row = spec.transition_row(h, s, a);
                ts.push_back(std::vector<double>(row, row + spec.num_states));
            }
            rh.push_back(rs);
            th.push_back(ts);
        }
        rewards.push_back(rh);
        transitions.push_back(th);
    }
    j["rewards"] = rewards;
    j["transitions"] = transitions;
    j["initial_state_dist"] = spec.initial_state_dist;
    return j.dump(2);
}

void save_mdp(const MdpSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write MDP file: " + path);
    out << mdp_to_json_text(spec) << '\n';
}

}  // namespace advq
