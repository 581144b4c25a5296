#pragma once

#include <cstdint>
#include <vector>

#include "advq/agent.hpp"

namespace advq {

// eta_n = (H+1)/(H+n).
double learning_rate(std::int64_t n, int horizon);

// c_b * sqrt(H^3 iota / n), the Hoeffding-style exploration bonus.
double ucb_bonus(double c_b, int horizon, double iota, std::int64_t n);

// Running moments for one (h,s,a) cell: the reference pair advances with
// weight 1/n, the advantage pair with eta_n.
struct AdvMoments {
    double mu_ref = 0.0;
    double sigma_ref = 0.0;
    double mu_adv = 0.0;
    double sigma_adv = 0.0;

    void update(std::int64_t n, int horizon, double vref_next, double adv_next);

    double var_ref() const;
    double var_adv() const;
};

// B = c_b * sqrt(iota/n) * (sqrt(var_ref) + sqrt(H) * sqrt(var_adv)), with
// both variances clamped at 0 before the square roots.
double reference_bonus(double c_b, double iota, std::int64_t n, const AdvMoments& m, int horizon);

// b = B + (1 - eta) * delta / eta + c_b * H^2 * iota / n^{3/4}, where delta
// is the increment of B at this visit.
double advantage_bonus(double b_ref, double delta_ref, double eta, double c_b, int horizon,
                       double iota, std::int64_t n);

struct QesParams {
    double beta = 1.0;    // settle threshold on V - Vlcb, in (0, H]
    double delta = 0.01;  // failure probability; iota = log(S * A * T / delta)
    double c_b = 1.0;     // bonus constant, >= 0
};

// Per-visit optimistic Q-learning with UCB/LCB value tracking and a
// reference function that freezes the first time V - Vlcb drops to beta.
// total_steps is the configured step budget T = K * H, fixed up front so
// iota does not drift with run length.
class QEarlySettledAgent : public Agent {
  public:
    QEarlySettledAgent(int num_states, int num_actions, int horizon, std::int64_t total_steps,
                       const QesParams& params);

    int select_action(int h, int s) const override;
    void observe_transition(int h, int s, int a, double r, int s_next) override;
    double q(int h, int s, int a) const override { return q_[sa(h, s, a)]; }
    double settled_fraction() const override;
    long long q_updates_this_episode() const override { return updates_this_episode_; }
    void begin_episode() override { updates_this_episode_ = 0; }

    double q_ucb(int h, int s, int a) const { return q_ucb_[sa(h, s, a)]; }
    double q_lcb(int h, int s, int a) const { return q_lcb_[sa(h, s, a)]; }
    double q_ref(int h, int s, int a) const { return q_ref_[sa(h, s, a)]; }
    double v(int h, int s) const { return v_[h * num_states_ + s]; }
    double v_lcb(int h, int s) const { return v_lcb_[h * num_states_ + s]; }
    double v_ref(int h, int s) const { return v_ref_[h * num_states_ + s]; }
    bool settled(int h, int s) const { return u_[h * num_states_ + s] == 0; }

    std::int64_t visit_count(int h, int s, int a) const { return n_[sa(h, s, a)]; }
    const AdvMoments& moments(int h, int s, int a) const { return moments_[sa(h, s, a)]; }
    double ref_bonus(int h, int s, int a) const { return b_ref_[sa(h, s, a)]; }
    double ref_bonus_delta(int h, int s, int a) const { return delta_ref_[sa(h, s, a)]; }

    double iota() const { return iota_; }
    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int horizon() const { return horizon_; }

  private:
    int sa(int h, int s, int a) const { return (h * num_states_ + s) * num_actions_ + a; }

    int num_states_, num_actions_, horizon_;
    QesParams params_;
    double iota_;

    std::vector<double> q_, q_ucb_, q_lcb_, q_ref_;  // [h][s][a]
    std::vector<double> v_, v_lcb_, v_ref_;          // [h][s] for h = 0..H, row H zero
    std::vector<std::int64_t> n_;
    std::vector<AdvMoments> moments_;
    std::vector<double> b_ref_, delta_ref_;
    std::vector<std::uint8_t> u_;  // 1 until the reference settles

    long long updates_this_episode_ = 0;
};

}  // namespace advq
