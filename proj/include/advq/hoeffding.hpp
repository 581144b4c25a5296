#pragma once

#include <cstdint>
#include <vector>

#include "advq/agent.hpp"

namespace advq {

struct HoeffdingParams {
    double delta = 0.01;  // failure probability; iota = log(S * A * T / delta)
    double c_b = 1.0;     // bonus constant, >= 0
};

// The UCB-only estimate used standalone: a single Q table driven by the
// Hoeffding bonus, with V clipped at H - h + 1. No min with the previous
// value, so Q is not monotone here.
class HoeffdingAgent : public Agent {
  public:
    HoeffdingAgent(int num_states, int num_actions, int horizon, std::int64_t total_steps,
                   const HoeffdingParams& params);

    int select_action(int h, int s) const override;
    void observe_transition(int h, int s, int a, double r, int s_next) override;
    double q(int h, int s, int a) const override { return q_[sa(h, s, a)]; }
    long long q_updates_this_episode() const override { return updates_this_episode_; }
    void begin_episode() override { updates_this_episode_ = 0; }

    double v(int h, int s) const { return v_[h * num_states_ + s]; }
    std::int64_t visit_count(int h, int s, int a) const { return n_[sa(h, s, a)]; }
    double iota() const { return iota_; }

  private:
    int sa(int h, int s, int a) const { return (h * num_states_ + s) * num_actions_ + a; }

    int num_states_, num_actions_, horizon_;
    HoeffdingParams params_;
    double iota_;

    std::vector<double> q_;  // [h][s][a]
    std::vector<double> v_;  // [h][s] for h = 0..H, row H zero
    std::vector<std::int64_t> n_;

    long long updates_this_episode_ = 0;
};

}  // namespace advq
