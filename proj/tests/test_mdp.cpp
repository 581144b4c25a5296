#include <cmath>
#include <cstdio>
#include <vector>

#include "advq/errors.hpp"
#include "advq/mdp.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace advq;

TEST_CASE("validate accepts a well-formed spec and returns it untouched") {
    const MdpSpec m = testutil::make_m2();
    const MdpSpec& out = validate_mdp(m);
    CHECK(&out == &m);
}

TEST_CASE("validate rejects inconsistent dimensions") {
    MdpSpec m = testutil::make_m2();
    m.num_states = 0;
    CHECK_THROWS_AS(validate_mdp(m), BadDimensions);

    m = testutil::make_m2();
    m.rewards.pop_back();
    CHECK_THROWS_AS(validate_mdp(m), BadDimensions);

    m = testutil::make_m2();
    m.transitions.push_back(0.0);
    CHECK_THROWS_AS(validate_mdp(m), BadDimensions);

    m = testutil::make_m2();
    m.initial_state_dist = {1.0};
    CHECK_THROWS_AS(validate_mdp(m), BadDimensions);

    m = testutil::make_m2();
    m.initial_state_dist = {0.7, 0.2};
    CHECK_THROWS_AS(validate_mdp(m), BadDimensions);
}

TEST_CASE("validate reports the offending transition row") {
    MdpSpec m = testutil::make_m2();
    // Row (h=1, s=1, a=0) is a point mass on state 0; scale it to sum 1.5.
    m.transitions[static_cast<std::size_t>(m.sa_index(1, 1, 0)) * 2 + 0] = 1.5;
    try {
        validate_mdp(m);
        FAIL("expected RowNotStochastic");
    } catch (const RowNotStochastic& e) {
        CHECK(e.step == 1);
        CHECK(e.state == 1);
        CHECK(e.action == 0);
        CHECK(e.row_sum == doctest::Approx(1.5));
    }

    m = testutil::make_m2();
    m.transitions[0] = -0.25;  // negative entry, even if the sum were patched
    CHECK_THROWS_AS(validate_mdp(m), RowNotStochastic);
}

TEST_CASE("validate reports rewards outside [0,1]") {
    MdpSpec m = testutil::make_m2();
    m.rewards[m.sa_index(0, 1, 1)] = 1.25;
    try {
        validate_mdp(m);
        FAIL("expected RewardOutOfRange");
    } catch (const RewardOutOfRange& e) {
        CHECK(e.step == 0);
        CHECK(e.state == 1);
        CHECK(e.action == 1);
        CHECK(e.value == doctest::Approx(1.25));
    }

    m = testutil::make_m2();
    m.rewards[0] = -0.1;
    CHECK_THROWS_AS(validate_mdp(m), RewardOutOfRange);
}

TEST_CASE("backward induction reproduces the M2 hand solution") {
    const MdpSpec m = testutil::make_m2();
    const OptimalSolution sol = solve_optimal(m);

    CHECK(sol.v(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sol.v(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sol.v(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sol.v(1, 1) == doctest::Approx(0.0));
    CHECK(sol.v(2, 0) == 0.0);  // absorbing row
    CHECK(sol.v(2, 1) == 0.0);

    CHECK(sol.q(0, 0, 0) == doctest::Approx(2.0));
    CHECK(sol.q(0, 0, 1) == doctest::Approx(0.5));
    CHECK(sol.q(1, 0, 0) == doctest::Approx(1.0));
    CHECK(sol.q(1, 0, 1) == doctest::Approx(0.5));

    CHECK(sol.gap(0, 0, 1) == doctest::Approx(1.5));
    CHECK(sol.gap(1, 0, 1) == doctest::Approx(0.5));
    CHECK(sol.gap(0, 0, 0) == doctest::Approx(0.0));

    CHECK(sol.delta_min == doctest::Approx(0.5));
    CHECK(sol.qvar_max == doctest::Approx(0.0));
    // Optimal triples: (0,s0,a0), (0,s1,a0), (1,s0,a0), and the step-1 tie at
    // s1 where both actions are worthless.
    CHECK(sol.d_opt_size == 5);
    CHECK(sol.d_opt_complement_size() == 3);
    CHECK(sol.is_optimal(0, 0, 0));
    CHECK_FALSE(sol.is_optimal(0, 0, 1));
    CHECK(sol.is_optimal(0, 1, 0));
    CHECK_FALSE(sol.is_optimal(0, 1, 1));
    CHECK(sol.is_optimal(1, 1, 0));
    CHECK(sol.is_optimal(1, 1, 1));
}

TEST_CASE("V* equals the max over Q* at every cell") {
    const MdpSpec m = generate_mdp(MdpFamily::kRandomStochastic, {3, 2, 3, 0.0, 200}, 11);
    const OptimalSolution sol = solve_optimal(m);
    for (int h = 0; h < m.horizon; ++h) {
        for (int s = 0; s < m.num_states; ++s) {
            double best = sol.q(h, s, 0);
            for (int a = 1; a < m.num_actions; ++a) best = std::max(best, sol.q(h, s, a));
            CHECK(sol.v(h, s) == doctest::Approx(best).epsilon(1e-15));
        }
    }
}

TEST_CASE("solve rejects a fully degenerate instance") {
    MdpSpec m = testutil::make_m2();
    m.rewards.assign(m.rewards.size(), 0.25);  // every action equally good
    CHECK_THROWS_AS(solve_optimal(m), DegenerateMdp);

    const OptimalSolution sol = solve_optimal_allow_degenerate(m);
    CHECK(sol.delta_min == 0.0);
    CHECK(sol.d_opt_size == static_cast<long long>(m.horizon) * m.num_states * m.num_actions);
}

TEST_CASE("qvar_max captures the worst next-step value variance") {
    // H=2, S=2. At step 0 one action splits 50/50 between a state worth 1 and
    // a state worth 0 at step 1, so the conditional variance of V*(1,.) is
    // 0.25 and no other row beats it.
    MdpSpec m;
    m.num_states = 2;
    m.num_actions = 2;
    m.horizon = 2;
    m.rewards.assign(8, 0.0);
    m.transitions.assign(16, 0.0);
    // Step 1 values: V*(1,s0)=1, V*(1,s1)=0.
    m.rewards[m.sa_index(1, 0, 0)] = 1.0;
    m.rewards[m.sa_index(1, 0, 1)] = 0.25;
    m.rewards[m.sa_index(1, 1, 0)] = 0.0;
    m.rewards[m.sa_index(1, 1, 1)] = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a < 2; ++a) m.transitions[(m.sa_index(1, s, a)) * 2 + 0] = 1.0;
    // Step 0: action 0 splits 50/50, action 1 goes straight to s1.
    m.rewards[m.sa_index(0, 0, 0)] = 0.5;
    m.rewards[m.sa_index(0, 0, 1)] = 0.5;
    m.rewards[m.sa_index(0, 1, 0)] = 0.0;
    m.rewards[m.sa_index(0, 1, 1)] = 0.0;
    for (int s = 0; s < 2; ++s) {
        m.transitions[(m.sa_index(0, s, 0)) * 2 + 0] = 0.5;
        m.transitions[(m.sa_index(0, s, 0)) * 2 + 1] = 0.5;
        m.transitions[(m.sa_index(0, s, 1)) * 2 + 1] = 1.0;
    }
    m.initial_state_dist = {1.0, 0.0};

    const OptimalSolution sol = solve_optimal(m);
    CHECK(sol.v(1, 0) == doctest::Approx(1.0));
    CHECK(sol.v(1, 1) == doctest::Approx(0.0));
    CHECK(sol.qvar_max == doctest::Approx(0.25).epsilon(1e-12));

    // Same variance surfaces through the degenerate-tolerant path when the
    // instance is collapsed to a single action.
    MdpSpec one = m;
    one.num_actions = 1;
    one.rewards = {0.5, 0.0, 1.0, 0.0};
    one.transitions.assign(8, 0.0);
    one.transitions[0 * 2 + 0] = 0.5;  // (0,s0): 50/50
    one.transitions[0 * 2 + 1] = 0.5;
    one.transitions[1 * 2 + 1] = 1.0;  // (0,s1): stay
    one.transitions[2 * 2 + 0] = 1.0;  // (1,s0)
    one.transitions[3 * 2 + 0] = 1.0;  // (1,s1)
    const OptimalSolution deg = solve_optimal_allow_degenerate(one);
    CHECK(deg.qvar_max == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(deg.delta_min == 0.0);
}

TEST_CASE("evaluate_policy reproduces hand values on M2") {
    const MdpSpec m = testutil::make_m2();

    Policy greedy(4, 0);  // a0 everywhere: the optimal policy
    std::vector<double> v = evaluate_policy(m, greedy);
    CHECK(v[0 * 2 + 0] == doctest::Approx(2.0));
    CHECK(v[1 * 2 + 0] == doctest::Approx(1.0));
    CHECK(v[2 * 2 + 0] == 0.0);

    Policy detour = greedy;
    detour[policy_index(m, 0, 0)] = 1;  // jump to s1 first, then a0
    v = evaluate_policy(m, detour);
    CHECK(v[0 * 2 + 0] == doctest::Approx(0.5));

    const OptimalSolution sol = solve_optimal(m);
    v = evaluate_policy(m, greedy);
    for (int h = 0; h <= m.horizon; ++h)
        for (int s = 0; s < m.num_states; ++s)
            CHECK(v[h * 2 + s] == doctest::Approx(sol.v(h, s)).epsilon(1e-12));
}

TEST_CASE("evaluate_policy validates the policy table") {
    const MdpSpec m = testutil::make_m2();
    CHECK_THROWS_AS(evaluate_policy(m, Policy(3, 0)), BadDimensions);
    Policy bad(4, 0);
    bad[1] = 2;  // action index out of range
    CHECK_THROWS_AS(evaluate_policy(m, bad), BadDimensions);
}

TEST_CASE("solver agrees with the brute-force oracle on random instances") {
    const int dims[4][3] = {{2, 2, 2}, {3, 2, 3}, {2, 2, 3}, {3, 2, 2}};
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        for (const auto& d : dims) {
            GeneratorParams p;
            p.num_states = d[0];
            p.num_actions = d[1];
            p.horizon = d[2];
            const MdpSpec m = generate_mdp(MdpFamily::kRandomStochastic, p, seed);
            const OptimalSolution sol = solve_optimal(m);
            const std::vector<double> best = oracle::best_start_values(m);
            for (int s = 0; s < m.num_states; ++s)
                CHECK(sol.v(0, s) == doctest::Approx(best[s]).epsilon(1e-12));
        }
    }
}

TEST_CASE("generator is deterministic in the seed") {
    GeneratorParams p;
    p.num_states = 3;
    p.num_actions = 2;
    p.horizon = 3;
    const MdpSpec a = generate_mdp(MdpFamily::kDeterministicChain, p, 7);
    const MdpSpec b = generate_mdp(MdpFamily::kDeterministicChain, p, 7);
    CHECK(a == b);
    const MdpSpec c = generate_mdp(MdpFamily::kRandomStochastic, p, 7);
    const MdpSpec d = generate_mdp(MdpFamily::kRandomStochastic, p, 7);
    CHECK(c == d);
}

TEST_CASE("deterministic chains have point-mass rows and zero variance") {
    GeneratorParams p;
    p.num_states = 3;
    p.num_actions = 2;
    p.horizon = 3;
    const MdpSpec m = generate_mdp(MdpFamily::kDeterministicChain, p, 21);
    for (std::size_t i = 0; i < m.rewards.size(); ++i) {
        const double* row = m.transitions.data() + i * m.num_states;
        int ones = 0;
        for (int t = 0; t < m.num_states; ++t) {
            CHECK((row[t] == 0.0 || row[t] == 1.0));
            ones += row[t] == 1.0;
        }
        CHECK(ones == 1);
    }
    const OptimalSolution sol = solve_optimal(m);
    CHECK(sol.qvar_max == 0.0);
    CHECK(sol.delta_min > 0.0);
}

TEST_CASE("unique_optimal yields exactly one optimal action per cell") {
    GeneratorParams p;
    p.num_states = 3;
    p.num_actions = 4;
    p.horizon = 3;
    p.min_gap = 0.3;
    const MdpSpec m = generate_mdp(MdpFamily::kUniqueOptimal, p, 5);
    const OptimalSolution sol = solve_optimal(m);
    CHECK(sol.d_opt_size == 9);
    CHECK(sol.delta_min >= 0.3);

    p.num_actions = 1;
    CHECK_THROWS_AS(generate_mdp(MdpFamily::kUniqueOptimal, p, 5), BadDimensions);
}

TEST_CASE("gap floor is honored or generation fails loudly") {
    GeneratorParams p;
    p.num_states = 2;
    p.num_actions = 2;
    p.horizon = 2;
    p.min_gap = 0.25;
    const MdpSpec m = generate_mdp(MdpFamily::kDeterministicChain, p, 3);
    CHECK(solve_optimal(m).delta_min >= 0.25);

    p.min_gap = 0.999;  // essentially unreachable for random rewards
    p.max_retries = 50;
    CHECK_THROWS_AS(generate_mdp(MdpFamily::kRandomStochastic, p, 3), GenerationFailed);

    p.num_states = 0;
    CHECK_THROWS_AS(generate_mdp(MdpFamily::kRandomStochastic, p, 3), BadDimensions);
}

TEST_CASE("family names round-trip and reject unknowns") {
    CHECK(parse_family("random_stochastic") == MdpFamily::kRandomStochastic);
    CHECK(parse_family("deterministic_chain") == MdpFamily::kDeterministicChain);
    CHECK(parse_family("unique_optimal") == MdpFamily::kUniqueOptimal);
    CHECK(family_name(MdpFamily::kUniqueOptimal) == "unique_optimal");
    CHECK_THROWS_AS(parse_family("bandit"), OutOfRange);
}

TEST_CASE("JSON round trip preserves the spec exactly") {
    const MdpSpec m = testutil::make_m2();
    const MdpSpec back = mdp_from_json_text(mdp_to_json_text(m));
    CHECK(back == m);

    const char* path = "m2_roundtrip_test.json";
    save_mdp(m, path);
    const MdpSpec loaded = load_mdp(path);
    CHECK(loaded == m);
    std::remove(path);
}

TEST_CASE("MDP parser rejects malformed documents") {
    CHECK_THROWS_AS(mdp_from_json_text("not json at all"), Error);
    CHECK_THROWS_AS(mdp_from_json_text("{\"S\": 2}"), Error);
    // Wrong array length slips past parsing but fails validation.
    MdpSpec m = testutil::make_m2();
    std::string text = mdp_to_json_text(m);
    const auto pos = text.find("\"S\": 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"S\": 3");
    CHECK_THROWS_AS(mdp_from_json_text(text), BadDimensions);
    CHECK_THROWS_AS(load_mdp("definitely_missing_file.json"), Error);
}
