#pragma once

#include <span>

namespace advq {

struct LogFit {
    double a;
    double b;
    double rms_residual;
};

// Least-squares fit of R(k) ~ a + b ln k on the tail of a cumulative-regret
// curve, skipping the first burn_in_fraction of episodes. Throws TooShort
// for sequences under 10 points (or too few left after burn-in).
LogFit fit_log_curve(std::span<const double> cumulative_regret, double burn_in_fraction = 0.5);

}  // namespace advq
