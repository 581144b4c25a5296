#include "advq/bounds.hpp"

#include <cmath>

#include "advq/errors.hpp"

namespace advq {

namespace {

double clamped_log(double x) {
    if (x <= 1.0) return 0.0;
    return std::log(x);
}

double ipow(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace

void validate_bound_inputs(const BoundInputs& in) {
    if (in.num_states < 1 || in.num_actions < 1 || in.horizon < 1)
        throw OutOfRange("dimensions", "S, A, H must be positive");
    if (in.total_steps < 1) throw OutOfRange("total_steps", "T must be positive");
    if (!(in.beta > 0.0 && in.beta <= in.horizon)) throw OutOfRange("beta", "must lie in (0, H]");
    const double h2 = static_cast<double>(in.horizon) * in.horizon;
    if (!(in.qvar_max >= 0.0 && in.qvar_max <= h2))
        throw OutOfRange("qvar_max", "must lie in [0, H^2]");
    if (in.delta_min < 0.0) throw OutOfRange("delta_min", "must be nonnegative");
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw OutOfRange("delta", "must lie in (0, 1)");
    const std::int64_t triples =
        static_cast<std::int64_t>(in.num_states) * in.num_actions * in.horizon;
    if (in.d_opt_size < 0 || in.d_opt_complement < 0 ||
        in.d_opt_size + in.d_opt_complement != triples)
        throw OutOfRange("d_opt", "|D_opt| + |D_opt^c| must equal S*A*H");
}

RegretBoundTerms bound_regret_terms(const BoundInputs& in, RegretBound which) {
    validate_bound_inputs(in);
    if (!(in.delta_min > 0.0)) throw OutOfRange("delta_min", "regret bounds need delta_min > 0");

    const double s = in.num_states;
    const double a = in.num_actions;
    const double h = in.horizon;
    const double t = in.total_steps;
    const double log_sat = clamped_log(s * a * t);
    const double log_t = clamped_log(t);

    switch (which) {
        case RegretBound::kHoeffdingEq1:
            return {ipow(h, 6) * s * a * log_sat / in.delta_min, 0.0};
        case RegretBound::kUcbAdvantageEq2: {
            const double gap = (in.qvar_max + in.beta * in.beta * h) * ipow(h, 3) * s * a *
                               log_sat / in.delta_min;
            const double free_term =
                ipow(h, 8) * s * s * a * log_sat * log_t / (in.beta * in.beta);
            return {gap, free_term};
        }
        case RegretBound::kQesEq3: {
            const double gap = (in.qvar_max + in.beta * in.beta * h) * ipow(h, 3) * s * a *
                               log_sat / in.delta_min;
            const double free_term = ipow(h, 7) * s * a * log_sat * log_sat / in.beta;
            return {gap, free_term};
        }
    }
    throw OutOfRange("which", "unknown regret bound selector");
}

double bound_regret(const BoundInputs& in, RegretBound which) {
    const RegretBoundTerms terms = bound_regret_terms(in, which);
    return terms.gap_term + terms.gap_free_term;
}

double bound_switching(const BoundInputs& in) {
    validate_bound_inputs(in);

    const double s = in.num_states;
    const double a = in.num_actions;
    const double h = in.horizon;
    const double t = in.total_steps;

    double first = 0.0;
    if (in.d_opt_size > 0) {
        const double opt = static_cast<double>(in.d_opt_size);
        first = h * opt * std::log(t / (h * opt) + 1.0);
    }

    double second = 0.0;
    if (in.d_opt_complement > 0) {
        if (!(in.delta_min > 0.0))
            throw OutOfRange("delta_min", "switching bound needs delta_min > 0");
        const double comp = static_cast<double>(in.d_opt_complement);
        const double arg = ipow(h, 4) * s * std::sqrt(a) * clamped_log(s * a * t / in.delta) /
                           (in.beta * std::sqrt(comp) * in.delta_min);
        second = h * comp * clamped_log(arg);
    }
    return first + second;
}

}  // namespace advq
