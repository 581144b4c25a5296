#pragma once

#include <cstdint>

namespace advq {

// Instance quantities the bound expressions depend on. delta is the failure
// probability appearing inside the switching bound's logarithm.
struct BoundInputs {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;
    double total_steps = 0.0;  // T
    double beta = 1.0;
    double delta_min = 0.0;
    double qvar_max = 0.0;
    std::int64_t d_opt_size = 0;
    std::int64_t d_opt_complement = 0;
    double delta = 0.01;
};

enum class RegretBound { kHoeffdingEq1, kUcbAdvantageEq2, kQesEq3 };

// Throws OutOfRange when a field violates its domain (dimensions positive,
// T >= 1, beta in (0,H], qvar_max in [0,H^2], set sizes summing to S*A*H).
void validate_bound_inputs(const BoundInputs& inputs);

struct RegretBoundTerms {
    double gap_term;       // scales with 1/delta_min
    double gap_free_term;  // decreasing in beta (zero for the Hoeffding form)
};

// All hidden constants set to 1 and logarithms natural, so the outputs are
// shape-only overlays, not certified values. Requires delta_min > 0.
RegretBoundTerms bound_regret_terms(const BoundInputs& inputs, RegretBound which);
double bound_regret(const BoundInputs& inputs, RegretBound which);

// Switching-cost expression. The suboptimal-triple term uses the convention
// 0/0 = 0 and clamps at 0 when its log argument is <= 1.
double bound_switching(const BoundInputs& inputs);

}  // namespace advq
