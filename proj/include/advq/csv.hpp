#pragma once

#include <ostream>
#include <string>

#include "advq/config.hpp"
#include "advq/episode_engine.hpp"

namespace advq {

// Shortest round-tripping decimal form, so repeated runs emit identical
// bytes on every platform with the same doubles.
std::string format_double(double value);

// One row per episode: episode, per_episode_regret, cumulative_regret,
// switch_local, cumulative_switch, settled_fraction,
// visits_subopt_cumulative.
void write_trace_csv(std::ostream& out, const RunRecord& record);
std::string trace_csv_text(const RunRecord& record);
void save_trace_csv(const std::string& path, const RunRecord& record);

// One row per run. Bound columns are labeled shape_only: constants are 1
// and logs natural, so only the shape is meaningful.
std::string summary_header();
std::string summary_row(const ExperimentConfig& config, const RunRecord& record);

}  // namespace advq
