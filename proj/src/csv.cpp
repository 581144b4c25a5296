#include "advq/csv.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "advq/bounds.hpp"
#include "advq/errors.hpp"
#include "advq/fit.hpp"

namespace advq {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

void write_trace_csv(std::ostream& out, const RunRecord& rec) {
    out << "episode,per_episode_regret,cumulative_regret,switch_local,cumulative_switch,"
           "settled_fraction,visits_subopt_cumulative\n";
    for (int k = 0; k < rec.episodes; ++k) {
        out << (k + 1) << ',' << format_double(rec.per_episode_regret[k]) << ','
            << format_double(rec.cumulative_regret[k]) << ',' << rec.switch_local[k] << ','
            << rec.cumulative_switch[k] << ',' << format_double(rec.settled_fraction[k]) << ','
            << rec.visits_subopt[k] << '\n';
    }
}

std::string trace_csv_text(const RunRecord& rec) {
    std::ostringstream out;
    write_trace_csv(out, rec);
    return out.str();
}

void save_trace_csv(const std::string& path, const RunRecord& rec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open trace output file: " + path);
    write_trace_csv(out, rec);
    if (!out) throw Error("failed writing trace output file: " + path);
}

std::string summary_header() {
    return "algorithm,beta,seed,episodes,final_cumulative_regret,final_cumulative_switch,"
           "delta_min,qvar_max,d_opt_size,bound_eq1_shape_only,bound_eq2_shape_only,"
           "bound_eq3_shape_only,bound_eq4_shape_only,fit_a,fit_b,fit_residual";
}

std::string summary_row(const ExperimentConfig& config, const RunRecord& rec) {
    BoundInputs inputs;
    inputs.num_states = rec.num_states;
    inputs.num_actions = rec.num_actions;
    inputs.horizon = rec.horizon;
    inputs.total_steps = static_cast<double>(rec.episodes) * rec.horizon;
    inputs.beta = config.beta;
    inputs.delta_min = rec.delta_min;
    inputs.qvar_max = rec.qvar_max;
    inputs.d_opt_size = rec.d_opt_size;
    inputs.d_opt_complement = rec.d_opt_complement;
    inputs.delta = config.failure_prob;

    double fit_a = std::numeric_limits<double>::quiet_NaN();
    double fit_b = fit_a, fit_residual = fit_a;
    if (rec.cumulative_regret.size() >= 10) {
        const LogFit fit = fit_log_curve(rec.cumulative_regret);
        fit_a = fit.a;
        fit_b = fit.b;
        fit_residual = fit.rms_residual;
    }

    std::ostringstream out;
    out << algorithm_name(config.algorithm) << ',' << format_double(config.beta) << ','
        << rec.seed << ',' << rec.episodes << ',' << format_double(rec.total_regret()) << ','
        << rec.total_switches() << ',' << format_double(rec.delta_min) << ','
        << format_double(rec.qvar_max) << ',' << rec.d_opt_size << ','
        << format_double(bound_regret(inputs, RegretBound::kHoeffdingEq1)) << ','
        << format_double(bound_regret(inputs, RegretBound::kUcbAdvantageEq2)) << ','
        << format_double(bound_regret(inputs, RegretBound::kQesEq3)) << ','
        << format_double(bound_switching(inputs)) << ',' << format_double(fit_a) << ','
        << format_double(fit_b) << ',' << format_double(fit_residual);
    return out.str();
}

}  // namespace advq
