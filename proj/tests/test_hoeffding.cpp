#include <cmath>

#include "advq/errors.hpp"
#include "advq/hoeffding.hpp"
#include "advq/mdp.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace advq;

TEST_CASE("fresh baseline tables") {
    const HoeffdingAgent agent(2, 2, 3, 30, {});
    for (int h = 0; h < 3; ++h)
        for (int s = 0; s < 2; ++s) {
            for (int a = 0; a < 2; ++a) CHECK(agent.q(h, s, a) == 3.0);
            CHECK(agent.v(h, s) == 3.0 - h);  // per-step ceiling from the start
        }
    CHECK(agent.v(3, 0) == 0.0);
    CHECK(agent.iota() == doctest::Approx(std::log(2.0 * 2.0 * 30.0 / 0.01)).epsilon(1e-15));
    CHECK(agent.select_action(1, 1) == 0);
    CHECK(agent.settled_fraction() == 0.0);  // no reference function to settle
}

TEST_CASE("constructor rejects out-of-range parameters") {
    HoeffdingParams p;
    CHECK_THROWS_AS(HoeffdingAgent(0, 1, 1, 10, p), BadDimensions);
    CHECK_THROWS_AS(HoeffdingAgent(1, 1, 1, 0, p), OutOfRange);
    p.delta = 0.0;
    CHECK_THROWS_AS(HoeffdingAgent(1, 1, 1, 10, p), OutOfRange);
    p = {};
    p.c_b = -1.0;
    CHECK_THROWS_AS(HoeffdingAgent(1, 1, 1, 10, p), OutOfRange);
}

TEST_CASE("first visit overwrites Q with the bonused target") {
    HoeffdingAgent agent(2, 1, 2, 100, {});
    agent.observe_transition(0, 0, 0, 0.5, 1);
    const double expected = 0.5 + agent.v(1, 1) + std::sqrt(8.0 * agent.iota());
    CHECK(agent.q(0, 0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(agent.visit_count(0, 0, 0) == 1);
    CHECK(agent.q_updates_this_episode() == 1);
}

TEST_CASE("V is clipped at the per-step ceiling while Q is not") {
    HoeffdingAgent agent(1, 1, 2, 100, {});
    agent.observe_transition(0, 0, 0, 1.0, 0);
    // Target = 1 + V(1) + bonus, far above H; Q keeps it, V clips to H - h.
    CHECK(agent.q(0, 0, 0) > 2.0);
    CHECK(agent.v(0, 0) == 2.0);

    agent.observe_transition(1, 0, 0, 1.0, 0);
    CHECK(agent.q(1, 0, 0) > 1.0);
    CHECK(agent.v(1, 0) == 1.0);
}

TEST_CASE("Q may rise again, unlike the advantage agents") {
    HoeffdingParams p;
    p.c_b = 0.0;
    HoeffdingAgent agent(2, 1, 1, 100, p);
    agent.observe_transition(0, 0, 0, 0.2, 0);
    CHECK(agent.q(0, 0, 0) == doctest::Approx(0.2));
    agent.observe_transition(0, 0, 0, 0.9, 0);  // eta = 2/3 pulls it back up
    CHECK(agent.q(0, 0, 0) == doctest::Approx(0.2 / 3.0 + (2.0 / 3.0) * 0.9));
}

TEST_CASE("bonus-free single-action chain converges to the exact values") {
    const int horizon = 5;
    const int episodes = 10 * horizon * (horizon + 1);  // 300
    const MdpSpec chain = testutil::make_single_chain(horizon, 0.7);
    const OptimalSolution sol = solve_optimal_allow_degenerate(chain);

    HoeffdingParams p;
    p.c_b = 0.0;
    HoeffdingAgent agent(1, 1, horizon, static_cast<std::int64_t>(episodes) * horizon, p);
    for (int k = 0; k < episodes; ++k)
        for (int h = 0; h < horizon; ++h)
            agent.observe_transition(h, 0, 0, chain.reward(h, 0, 0), 0);

    for (int h = 0; h < horizon; ++h)
        CHECK(std::abs(agent.q(h, 0, 0) - sol.q(h, 0, 0)) <= 1e-6);
}

TEST_CASE("V never exceeds the per-step ceiling over a driven run") {
    const MdpSpec m = testutil::make_m2();
    HoeffdingAgent agent(2, 2, 2, 2 * 300, {});
    for (int k = 0; k < 300; ++k) {
        int s = 0;
        for (int h = 0; h < 2; ++h) {
            const int a = agent.select_action(h, s);
            agent.observe_transition(h, s, a, m.reward(h, s, a), a);
            s = a;
        }
        for (int h = 0; h < 2; ++h)
            for (int st = 0; st < 2; ++st) CHECK(agent.v(h, st) <= 2.0 - h);
    }
}
