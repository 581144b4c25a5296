#include "advq/ucb_advantage.hpp"

#include <algorithm>
#include <cmath>

#include "advq/errors.hpp"

namespace advq {

namespace {
double clamp0(double x) { return x > 0.0 ? x : 0.0; }
}  // namespace

StageBonuses compute_bonuses(std::int64_t n, std::int64_t stage_n, double mu_ref,
                             double sigma_ref, double mu_stage, double sigma_stage, int horizon,
                             double iota, bool iota_inside_sqrt) {
    const double dn = static_cast<double>(n);
    const double dcn = static_cast<double>(stage_n);
    const double var_ref = clamp0(sigma_ref / dn - (mu_ref / dn) * (mu_ref / dn));
    const double var_stage = clamp0(sigma_stage / dcn - (mu_stage / dcn) * (mu_stage / dcn));
    const double h = static_cast<double>(horizon);

    double b;
    if (iota_inside_sqrt) {
        b = 2.0 * std::sqrt(var_ref * iota / dn) + 2.0 * std::sqrt(var_stage * iota / dcn);
    } else {
        b = 2.0 * std::sqrt(var_ref / dn) * iota + 2.0 * std::sqrt(var_stage / dcn) * iota;
    }
    const double iota34 = std::pow(iota, 0.75);
    b += 5.0 * (h * iota / dn + h * iota / dcn + h * iota34 / std::pow(dn, 0.75) +
                h * iota34 / std::pow(dcn, 0.75));

    const double b_bar = 2.0 * std::sqrt(h * h * iota / dcn);
    return {b, b_bar};
}

UcbAdvantageAgent::UcbAdvantageAgent(int num_states, int num_actions, int horizon,
                                     const UcbAdvantageParams& params)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      params_(params),
      schedule_(horizon) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw BadDimensions("agent dimensions must be positive");
    if (!(params.beta > 0.0 && params.beta <= horizon))
        throw OutOfRange("beta", "must lie in (0, H]");
    if (!(params.failure_prob > 0.0 && params.failure_prob < 1.0))
        throw OutOfRange("p", "must lie in (0, 1)");
    if (!(params.c0 > 0.0)) throw OutOfRange("c0", "must be positive");

    iota_ = std::log(2.0 / params.failure_prob);
    if (params.n0_override >= 0) {
        n0_ = static_cast<double>(params.n0_override);
    } else {
        n0_ = params.c0 * num_states * num_actions * std::pow(horizon, 5.0) * iota_ /
              (params.beta * params.beta);
    }

    const std::size_t n_sa = static_cast<std::size_t>(horizon) * num_states * num_actions;
    const std::size_t n_hs = static_cast<std::size_t>(horizon) * num_states;
    q_.resize(n_sa);
    v_.assign(n_hs + num_states, 0.0);
    v_ref_.assign(n_hs + num_states, 0.0);
    for (int h = 0; h < horizon; ++h) {
        const double optimistic = static_cast<double>(horizon - h);
        for (int s = 0; s < num_states; ++s) {
            v_[h * num_states + s] = optimistic;
            v_ref_[h * num_states + s] = static_cast<double>(horizon);
            for (int a = 0; a < num_actions; ++a) q_[sa(h, s, a)] = optimistic;
        }
    }
    n_.assign(n_sa, 0);
    stage_n_.assign(n_sa, 0);
    stage_cursor_.assign(n_sa, 0);
    mu_check_.assign(n_sa, 0.0);
    v_check_.assign(n_sa, 0.0);
    sigma_check_.assign(n_sa, 0.0);
    mu_ref_acc_.assign(n_sa, 0.0);
    sigma_ref_acc_.assign(n_sa, 0.0);
    state_step_visits_.assign(n_hs, 0);
    ref_settled_.assign(n_hs, 0);
}

int UcbAdvantageAgent::select_action(int h, int s) const {
    const int base = sa(h, s, 0);
    return argmax_action(num_actions_, [&](int a) { return q_[base + a]; });
}

void UcbAdvantageAgent::observe_transition(int h, int s, int a, double r, int s_next) {
    const int idx = sa(h, s, a);
    const int next_base = (h + 1) * num_states_;
    const double v_next = v_[next_base + s_next];
    const double vref_next = v_ref_[next_base + s_next];

    ++n_[idx];
    ++stage_n_[idx];
    const double adv = v_next - vref_next;
    mu_check_[idx] += adv;
    v_check_[idx] += v_next;
    sigma_check_[idx] += adv * adv;
    mu_ref_acc_[idx] += vref_next;
    sigma_ref_acc_[idx] += vref_next * vref_next;

    if (n_[idx] == schedule_.next_end(stage_cursor_[idx])) {
        stage_update_q(idx, h, s, r);
        ++stage_cursor_[idx];
        stage_n_[idx] = 0;
        mu_check_[idx] = 0.0;
        v_check_[idx] = 0.0;
        sigma_check_[idx] = 0.0;
    }

    const int hs = h * num_states_ + s;
    ++state_step_visits_[hs];
    if (!ref_settled_[hs] && static_cast<double>(state_step_visits_[hs]) >= n0_) {
        v_ref_[hs] = v_[hs];
        ref_settled_[hs] = 1;
    }
}

void UcbAdvantageAgent::stage_update_q(int idx, int h, int s, double r) {
    const StageBonuses bonuses =
        compute_bonuses(n_[idx], stage_n_[idx], mu_ref_acc_[idx], sigma_ref_acc_[idx],
                        mu_check_[idx], sigma_check_[idx], horizon_, iota_,
                        params_.iota_inside_sqrt);
    const double dn = static_cast<double>(n_[idx]);
    const double dcn = static_cast<double>(stage_n_[idx]);
    const double q_ucb = r + v_check_[idx] / dcn + bonuses.b_bar;
    const double q_adv = r + mu_ref_acc_[idx] / dn + mu_check_[idx] / dcn + bonuses.b;
    q_[idx] = std::min({q_ucb, q_adv, q_[idx]});

    const int base = sa(h, s, 0);
    v_[h * num_states_ + s] = *std::max_element(q_.begin() + base, q_.begin() + base + num_actions_);
    ++updates_this_episode_;
}

double UcbAdvantageAgent::settled_fraction() const {
    std::size_t settled = 0;
    for (std::uint8_t f : ref_settled_) settled += f;
    return static_cast<double>(settled) / static_cast<double>(ref_settled_.size());
}

}  // namespace advq
