#include "advq/fit.hpp"

#include <cmath>
#include <cstddef>

#include "advq/errors.hpp"

namespace advq {

LogFit fit_log_curve(std::span<const double> cumulative_regret, double burn_in_fraction) {
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
        throw OutOfRange("burn_in_fraction", "must lie in [0, 1)");
    const std::size_t total = cumulative_regret.size();
    if (total < 10) throw TooShort("fit_log_curve needs at least 10 episodes");
    const std::size_t start =
        static_cast<std::size_t>(static_cast<double>(total) * burn_in_fraction);
    const std::size_t count = total - start;
    if (count < 2) throw TooShort("burn-in leaves fewer than 2 points");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = start; i < total; ++i) {
        mean_x += std::log(static_cast<double>(i + 1));
        mean_y += cumulative_regret[i];
    }
    mean_x /= static_cast<double>(count);
    mean_y /= static_cast<double>(count);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = start; i < total; ++i) {
        const double dx = std::log(static_cast<double>(i + 1)) - mean_x;
        sxx += dx * dx;
        sxy += dx * (cumulative_regret[i] - mean_y);
    }

    LogFit fit;
    fit.b = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.a = mean_y - fit.b * mean_x;

    double sq = 0.0;
    for (std::size_t i = start; i < total; ++i) {
        const double err =
            cumulative_regret[i] - fit.a - fit.b * std::log(static_cast<double>(i + 1));
        sq += err * err;
    }
    fit.rms_residual = std::sqrt(sq / static_cast<double>(count));
    return fit;
}

}  // namespace advq
