#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advq/config.hpp"
#include "advq/episode_engine.hpp"

namespace advq {

struct SweepRequest {
    ExperimentConfig base;
    std::vector<double> betas;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
};

struct SweepOutcome {
    std::vector<RunRecord> records;  // grid order: betas outer, seeds inner
    std::vector<std::string> trace_paths;
    std::string summary_path;
};

// One independent run per (beta, seed) pair. Each run's trace CSV lands in
// output_dir and its summary row is flushed as soon as the run finishes, so
// a failing run leaves the completed rows behind.
SweepOutcome run_sweep(const SweepRequest& request);

}  // namespace advq
