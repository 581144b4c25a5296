#include "advq/q_early_settled.hpp"

#include <algorithm>
#include <cmath>

#include "advq/errors.hpp"

namespace advq {

namespace {
double clamp0(double x) { return x > 0.0 ? x : 0.0; }
}  // namespace

double learning_rate(std::int64_t n, int horizon) {
    return static_cast<double>(horizon + 1) / static_cast<double>(horizon + n);
}

double ucb_bonus(double c_b, int horizon, double iota, std::int64_t n) {
    const double h = static_cast<double>(horizon);
    return c_b * std::sqrt(h * h * h * iota / static_cast<double>(n));
}

void AdvMoments::update(std::int64_t n, int horizon, double vref_next, double adv_next) {
    const double w = 1.0 / static_cast<double>(n);
    mu_ref = (1.0 - w) * mu_ref + w * vref_next;
    sigma_ref = (1.0 - w) * sigma_ref + w * vref_next * vref_next;
    const double eta = learning_rate(n, horizon);
    mu_adv = (1.0 - eta) * mu_adv + eta * adv_next;
    sigma_adv = (1.0 - eta) * sigma_adv + eta * adv_next * adv_next;
}

double AdvMoments::var_ref() const { return clamp0(sigma_ref - mu_ref * mu_ref); }

double AdvMoments::var_adv() const { return clamp0(sigma_adv - mu_adv * mu_adv); }

double reference_bonus(double c_b, double iota, std::int64_t n, const AdvMoments& m,
                       int horizon) {
    return c_b * std::sqrt(iota / static_cast<double>(n)) *
           (std::sqrt(m.var_ref()) +
            std::sqrt(static_cast<double>(horizon)) * std::sqrt(m.var_adv()));
}

double advantage_bonus(double b_ref, double delta_ref, double eta, double c_b, int horizon,
                       double iota, std::int64_t n) {
    const double h = static_cast<double>(horizon);
    return b_ref + (1.0 - eta) * delta_ref / eta +
           c_b * h * h * iota / std::pow(static_cast<double>(n), 0.75);
}

QEarlySettledAgent::QEarlySettledAgent(int num_states, int num_actions, int horizon,
                                       std::int64_t total_steps, const QesParams& params)
    : num_states_(num_states), num_actions_(num_actions), horizon_(horizon), params_(params) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw BadDimensions("agent dimensions must be positive");
    if (total_steps < 1) throw OutOfRange("total_steps", "must be positive");
    if (!(params.beta > 0.0 && params.beta <= horizon))
        throw OutOfRange("beta", "must lie in (0, H]");
    if (!(params.delta > 0.0 && params.delta < 1.0))
        throw OutOfRange("delta", "must lie in (0, 1)");
    if (params.c_b < 0.0) throw OutOfRange("c_b", "must be nonnegative");

    iota_ = std::log(static_cast<double>(num_states) * num_actions *
                     static_cast<double>(total_steps) / params.delta);

    const std::size_t n_sa = static_cast<std::size_t>(horizon) * num_states * num_actions;
    const std::size_t n_hs = static_cast<std::size_t>(horizon) * num_states;
    const double h_value = static_cast<double>(horizon);

    q_.assign(n_sa, h_value);
    q_ucb_.assign(n_sa, h_value);
    q_ref_.assign(n_sa, h_value);
    q_lcb_.assign(n_sa, 0.0);
    v_.assign(n_hs + num_states, 0.0);
    v_ref_.assign(n_hs + num_states, 0.0);
    v_lcb_.assign(n_hs + num_states, 0.0);
    std::fill(v_.begin(), v_.begin() + n_hs, h_value);
    std::fill(v_ref_.begin(), v_ref_.begin() + n_hs, h_value);
    n_.assign(n_sa, 0);
    moments_.assign(n_sa, AdvMoments{});
    b_ref_.assign(n_sa, 0.0);
    delta_ref_.assign(n_sa, 0.0);
    u_.assign(n_hs, 1);
}

int QEarlySettledAgent::select_action(int h, int s) const {
    const int base = sa(h, s, 0);
    return argmax_action(num_actions_, [&](int a) { return q_[base + a]; });
}

void QEarlySettledAgent::observe_transition(int h, int s, int a, double r, int s_next) {
    const int idx = sa(h, s, a);
    const int hs = h * num_states_ + s;
    const int next = (h + 1) * num_states_ + s_next;

    const std::int64_t n = ++n_[idx];
    const double eta = learning_rate(n, horizon_);
    const double bonus = ucb_bonus(params_.c_b, horizon_, iota_, n);

    q_ucb_[idx] = (1.0 - eta) * q_ucb_[idx] + eta * (r + v_[next] + bonus);
    q_lcb_[idx] = (1.0 - eta) * q_lcb_[idx] + eta * (r + v_lcb_[next] - bonus);

    AdvMoments& m = moments_[idx];
    m.update(n, horizon_, v_ref_[next], v_[next] - v_ref_[next]);

    const double b_next = reference_bonus(params_.c_b, iota_, n, m, horizon_);
    delta_ref_[idx] = b_next - b_ref_[idx];
    b_ref_[idx] = b_next;

    const double b_r =
        advantage_bonus(b_ref_[idx], delta_ref_[idx], eta, params_.c_b, horizon_, iota_, n);
    q_ref_[idx] = (1.0 - eta) * q_ref_[idx] +
                  eta * (r + v_[next] - v_ref_[next] + m.mu_ref + b_r);

    q_[idx] = std::min({q_ref_[idx], q_ucb_[idx], q_[idx]});

    const int base = sa(h, s, 0);
    v_[hs] = *std::max_element(q_.begin() + base, q_.begin() + base + num_actions_);
    const double lcb =
        *std::max_element(q_lcb_.begin() + base, q_lcb_.begin() + base + num_actions_);
    v_lcb_[hs] = std::max(lcb, v_lcb_[hs]);

    if (v_[hs] - v_lcb_[hs] > params_.beta) {
        v_ref_[hs] = v_[hs];
    } else if (u_[hs]) {
        v_ref_[hs] = v_[hs];
        u_[hs] = 0;
    }
    ++updates_this_episode_;
}

double QEarlySettledAgent::settled_fraction() const {
    std::size_t settled = 0;
    for (std::uint8_t flag : u_) settled += (flag == 0);
    return static_cast<double>(settled) / static_cast<double>(u_.size());
}

}  // namespace advq
