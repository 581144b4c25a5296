#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace advq {

// Suboptimality-gap tie tolerance on Q*: actions within this of the best are
// treated as optimal when building the optimal-action set.
inline constexpr double kGapTieTolerance = 1e-9;

inline constexpr double kStochasticTolerance = 1e-9;

// Finite-horizon tabular MDP with deterministic rewards in [0,1].
// Steps are 0-based internally: h = 0..H-1, with the absorbing step at H.
struct MdpSpec {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::vector<double> rewards;             // [h][s][a]
    std::vector<double> transitions;         // [h][s][a][s']
    std::vector<double> initial_state_dist;  // [s]

    int sa_index(int h, int s, int a) const { return (h * num_states + s) * num_actions + a; }

    double reward(int h, int s, int a) const { return rewards[sa_index(h, s, a)]; }

    const double* transition_row(int h, int s, int a) const {
        return transitions.data() + static_cast<std::size_t>(sa_index(h, s, a)) * num_states;
    }

    bool operator==(const MdpSpec&) const = default;
};

// A deterministic policy: action per (h, s), h = 0..H-1.
using Policy = std::vector<int>;

inline int policy_index(const MdpSpec& mdp, int h, int s) { return h * mdp.num_states + s; }

// Ground truth produced by exact backward induction.
struct OptimalSolution {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    std::vector<double> q_star;  // [h][s][a], h = 0..H-1
    std::vector<double> v_star;  // [h][s], h = 0..H (row H is zero)
    std::vector<double> gaps;    // [h][s][a]
    double delta_min = 0.0;      // smallest gap above the tie tolerance; 0 if none
    double qvar_max = 0.0;
    std::vector<std::uint8_t> optimal_action;  // [h][s][a], 1 iff gap within tolerance
    long long d_opt_size = 0;

    long long d_opt_complement_size() const {
        return static_cast<long long>(horizon) * num_states * num_actions - d_opt_size;
    }

    int sa_index(int h, int s, int a) const { return (h * num_states + s) * num_actions + a; }

    double q(int h, int s, int a) const { return q_star[sa_index(h, s, a)]; }
    double v(int h, int s) const { return v_star[h * num_states + s]; }
    double gap(int h, int s, int a) const { return gaps[sa_index(h, s, a)]; }
    bool is_optimal(int h, int s, int a) const { return optimal_action[sa_index(h, s, a)] != 0; }
};

// Throws BadDimensions / RewardOutOfRange / RowNotStochastic; returns its
// argument untouched when every invariant holds.
const MdpSpec& validate_mdp(const MdpSpec& spec);

// Backward induction over a validated spec. Throws DegenerateMdp when no
// strictly positive gap exists (delta_min would be undefined).
OptimalSolution solve_optimal(const MdpSpec& spec);

// Same computation without the degeneracy check; delta_min is 0 when no
// positive gap exists. Used by the generator's rejection loop.
OptimalSolution solve_optimal_allow_degenerate(const MdpSpec& spec);

// V^pi for a total deterministic policy; returns [h][s] for h = 0..H
// (row H identically zero).
std::vector<double> evaluate_policy(const MdpSpec& spec, const Policy& policy);

enum class MdpFamily { kRandomStochastic, kDeterministicChain, kUniqueOptimal };

struct GeneratorParams {
    int num_states = 2;
    int num_actions = 2;
    int horizon = 2;
    double min_gap = 0.0;  // > 0 requests rejection down to this gap floor
    int max_retries = 200;
};

// Seeded, deterministic generator. Throws GenerationFailed once the retry
// budget is exhausted without meeting the requested gap floor.
MdpSpec generate_mdp(MdpFamily family, const GeneratorParams& params, std::uint64_t seed);

MdpFamily parse_family(const std::string& name);  // throws OutOfRange
std::string family_name(MdpFamily family);

// JSON round-trip, schema {"S","A","H","rewards","transitions","initial_state_dist"}.
MdpSpec load_mdp(const std::string& path);
MdpSpec mdp_from_json_text(const std::string& text);
std::string mdp_to_json_text(const MdpSpec& spec);
void save_mdp(const MdpSpec& spec, const std::string& path);

}  // namespace advq
