#include "advq/hoeffding.hpp"

#include <algorithm>
#include <cmath>

#include "advq/errors.hpp"
#include "advq/q_early_settled.hpp"

namespace advq {

HoeffdingAgent::HoeffdingAgent(int num_states, int num_actions, int horizon,
                               std::int64_t total_steps, const HoeffdingParams& params)
    : num_states_(num_states), num_actions_(num_actions), horizon_(horizon), params_(params) {
    if (num_states < 1 || num_actions < 1 || horizon < 1)
        throw BadDimensions("agent dimensions must be positive");
    if (total_steps < 1) throw OutOfRange("total_steps", "must be positive");
    if (!(params.delta > 0.0 && params.delta < 1.0))
        throw OutOfRange("delta", "must lie in (0, 1)");
    if (params.c_b < 0.0) throw OutOfRange("c_b", "must be nonnegative");

    iota_ = std::log(static_cast<double>(num_states) * num_actions *
                     static_cast<double>(total_steps) / params.delta);

    const std::size_t n_sa = static_cast<std::size_t>(horizon) * num_states * num_actions;
    const std::size_t n_hs = static_cast<std::size_t>(horizon) * num_states;
    q_.assign(n_sa, static_cast<double>(horizon));
    v_.assign(n_hs + num_states, 0.0);
    // V starts at the per-step ceiling, the clip applied to the fresh Q.
    for (int h = 0; h < horizon; ++h)
        for (int s = 0; s < num_states; ++s)
            v_[h * num_states + s] = static_cast<double>(horizon - h);
    n_.assign(n_sa, 0);
}

int HoeffdingAgent::select_action(int h, int s) const {
    const int base = sa(h, s, 0);
    return argmax_action(num_actions_, [&](int a) { return q_[base + a]; });
}

void HoeffdingAgent::observe_transition(int h, int s, int a, double r, int s_next) {
    const int idx = sa(h, s, a);
    const std::int64_t n = ++n_[idx];
    const double eta = learning_rate(n, horizon_);
    const double bonus = ucb_bonus(params_.c_b, horizon_, iota_, n);

    q_[idx] = (1.0 - eta) * q_[idx] + eta * (r + v_[(h + 1) * num_states_ + s_next] + bonus);

    const int base = sa(h, s, 0);
    const double clip = static_cast<double>(horizon_ - h);
    v_[h * num_states_ + s] =
        std::min(clip, *std::max_element(q_.begin() + base, q_.begin() + base + num_actions_));
    ++updates_this_episode_;
}

}  // namespace advq
