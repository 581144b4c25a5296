#include "advq/sweep.hpp"

#include <filesystem>
#include <fstream>

#include "advq/csv.hpp"
#include "advq/errors.hpp"

namespace advq {

SweepOutcome run_sweep(const SweepRequest& request) {
    if (request.betas.empty()) throw InvalidConfig("sweep needs at least one beta value");
    if (request.seeds.empty()) throw InvalidConfig("sweep needs at least one seed");
    if (request.output_dir.empty()) throw InvalidConfig("sweep needs an output directory");

    std::filesystem::create_directories(request.output_dir);
    SweepOutcome outcome;
    outcome.summary_path =
        (std::filesystem::path(request.output_dir) / "summary.csv").string();

    std::ofstream summary(outcome.summary_path, std::ios::binary);
    if (!summary) throw Error("cannot open summary file: " + outcome.summary_path);
    summary << summary_header() << '\n';
    summary.flush();

    const std::string algorithm = algorithm_name(request.base.algorithm);
    for (double beta : request.betas) {
        for (std::uint64_t seed : request.seeds) {
            ExperimentConfig config = request.base;
            config.beta = beta;
            config.seed = seed;

            const std::string name = "trace_" + algorithm + "_beta" + format_double(beta) +
                                     "_seed" + std::to_string(seed) + ".csv";
            const std::string trace_path =
                (std::filesystem::path(request.output_dir) / name).string();

            const ExperimentResult result = run_experiment(config);
            save_trace_csv(trace_path, result.record);
            summary << summary_row(config, result.record) << '\n';
            summary.flush();

            outcome.records.push_back(result.record);
            outcome.trace_paths.push_back(trace_path);
        }
    }
    return outcome;
}

}  // namespace advq
