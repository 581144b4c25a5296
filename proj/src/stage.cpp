#include "advq/stage.hpp"

#include "advq/errors.hpp"

namespace advq {

std::vector<std::int64_t> stage_lengths(int horizon, int count) {
    if (horizon < 1 || count < 1) throw BadDimensions("stage_lengths needs H >= 1, count >= 1");
    std::vector<std::int64_t> lengths(static_cast<std::size_t>(count));
    std::int64_t e = horizon;
    for (int i = 0; i < count; ++i) {
        lengths[i] = e;
        e += e / horizon;
    }
    return lengths;
}

std::vector<std::int64_t> stage_ends(int horizon, int count) {
    std::vector<std::int64_t> ends = stage_lengths(horizon, count);
    for (std::size_t i = 1; i < ends.size(); ++i) ends[i] += ends[i - 1];
    return ends;
}

StageSchedule::StageSchedule(int horizon) : horizon_(horizon), last_length_(horizon) {
    if (horizon < 1) throw BadDimensions("StageSchedule needs H >= 1");
    ends_.push_back(horizon);
}

std::int64_t StageSchedule::next_end(std::size_t stage_index) {
    while (stage_index >= ends_.size()) {
        last_length_ += last_length_ / horizon_;
        ends_.push_back(ends_.back() + last_length_);
    }
    return ends_[stage_index];
}

}  // namespace advq
