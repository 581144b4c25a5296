#pragma once

#include <cstdint>
#include <vector>

namespace advq {

// Stage lengths e_1 = H, e_{i+1} = floor((1 + 1/H) e_i), computed in integer
// arithmetic: floor(e (H+1) / H) = e + e / H.
std::vector<std::int64_t> stage_lengths(int horizon, int count);

// Cumulative stage ends (prefix sums of the lengths).
std::vector<std::int64_t> stage_ends(int horizon, int count);

// Membership in the stage-end set, grown on demand. One instance is shared
// by all (h,s,a) triples of an agent; each triple keeps its own cursor.
class StageSchedule {
  public:
    explicit StageSchedule(int horizon);

    // Index of the first stage end >= 1 is 0. next_end(i) is the visit count
    // that closes stage i.
    std::int64_t next_end(std::size_t stage_index);

    int horizon() const { return horizon_; }

  private:
    int horizon_;
    std::vector<std::int64_t> ends_;
    std::int64_t last_length_;
};

}  // namespace advq
