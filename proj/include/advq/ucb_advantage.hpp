#pragma once

#include <cstdint>
#include <vector>

#include "advq/agent.hpp"
#include "advq/stage.hpp"

namespace advq {

struct UcbAdvantageParams {
    double beta = 1.0;           // reference-settling hyper-parameter, in (0, H]
    double failure_prob = 0.01;  // p; iota = log(2/p)
    double c0 = 1.0;             // N0 = c0 * S * A * H^5 * iota / beta^2
    std::int64_t n0_override = -1;  // >= 0 replaces the N0 formula with a raw count
    bool iota_inside_sqrt = false;  // Bernstein placement for b's variance terms
};

struct StageBonuses {
    double b;      // reference-advantage bonus
    double b_bar;  // plain UCB bonus
};

// Bonuses at a stage end from the accumulator totals. The default keeps iota
// outside the variance square roots for b; iota_inside_sqrt moves it inside.
// b_bar always carries iota inside.
StageBonuses compute_bonuses(std::int64_t n, std::int64_t stage_n, double mu_ref,
                             double sigma_ref, double mu_stage, double sigma_stage, int horizon,
                             double iota, bool iota_inside_sqrt = false);

// Stage-based optimistic Q-learning with reference-advantage decomposition:
// Q updates fire only when a triple's visit count closes a stage, and the
// per-(h,s) reference value freezes once the visit count passes N0.
class UcbAdvantageAgent : public Agent {
  public:
    UcbAdvantageAgent(int num_states, int num_actions, int horizon,
                      const UcbAdvantageParams& params);

    int select_action(int h, int s) const override;
    void observe_transition(int h, int s, int a, double r, int s_next) override;
    double q(int h, int s, int a) const override { return q_[sa(h, s, a)]; }
    double settled_fraction() const override;
    long long q_updates_this_episode() const override { return updates_this_episode_; }
    void begin_episode() override { updates_this_episode_ = 0; }

    double v(int h, int s) const { return v_[h * num_states_ + s]; }
    double v_ref(int h, int s) const { return v_ref_[h * num_states_ + s]; }
    bool ref_settled(int h, int s) const { return ref_settled_[h * num_states_ + s] != 0; }

    std::int64_t visit_count(int h, int s, int a) const { return n_[sa(h, s, a)]; }
    std::int64_t stage_visit_count(int h, int s, int a) const { return stage_n_[sa(h, s, a)]; }
    std::int64_t state_step_visits(int h, int s) const {
        return state_step_visits_[h * num_states_ + s];
    }
    double mu_stage(int h, int s, int a) const { return mu_check_[sa(h, s, a)]; }
    double v_stage(int h, int s, int a) const { return v_check_[sa(h, s, a)]; }
    double sigma_stage(int h, int s, int a) const { return sigma_check_[sa(h, s, a)]; }
    double mu_ref_total(int h, int s, int a) const { return mu_ref_acc_[sa(h, s, a)]; }
    double sigma_ref_total(int h, int s, int a) const { return sigma_ref_acc_[sa(h, s, a)]; }

    double settle_threshold() const { return n0_; }
    double iota() const { return iota_; }

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int horizon() const { return horizon_; }

  private:
    int sa(int h, int s, int a) const { return (h * num_states_ + s) * num_actions_ + a; }

    void stage_update_q(int idx, int h, int s, double r);

    int num_states_, num_actions_, horizon_;
    UcbAdvantageParams params_;
    double iota_;
    double n0_;
    StageSchedule schedule_;

    std::vector<double> q_;      // [h][s][a], init H - h
    std::vector<double> v_;      // [h][s] for h = 0..H, row H zero
    std::vector<double> v_ref_;  // [h][s] for h = 0..H, init H, row H zero

    std::vector<std::int64_t> n_;        // global visit counts
    std::vector<std::int64_t> stage_n_;  // within-stage visit counts
    std::vector<std::size_t> stage_cursor_;
    std::vector<double> mu_check_, v_check_, sigma_check_;    // within-stage accumulators
    std::vector<double> mu_ref_acc_, sigma_ref_acc_;          // global accumulators
    std::vector<std::int64_t> state_step_visits_;             // [h][s]
    std::vector<std::uint8_t> ref_settled_;                   // [h][s]

    long long updates_this_episode_ = 0;
};

}  // namespace advq
