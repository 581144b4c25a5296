#include <cmath>
#include <cstdint>
#include <vector>

#include "advq/errors.hpp"
#include "advq/stage.hpp"
#include "doctest.h"

using namespace advq;

TEST_CASE("stage lengths follow e1=H, e <- e + floor(e/H)") {
    CHECK(stage_lengths(2, 5) == std::vector<std::int64_t>{2, 3, 4, 6, 9});
    CHECK(stage_lengths(1, 3) == std::vector<std::int64_t>{1, 2, 4});
    CHECK(stage_lengths(3, 6) == std::vector<std::int64_t>{3, 4, 5, 6, 8, 10});
}

TEST_CASE("stage ends are the running sums of the lengths") {
    CHECK(stage_ends(2, 5) == std::vector<std::int64_t>{2, 5, 9, 15, 24});
    CHECK(stage_ends(1, 4) == std::vector<std::int64_t>{1, 3, 7, 15});
}

TEST_CASE("StageSchedule lazily matches the eager tables") {
    StageSchedule sched(2);
    const std::vector<std::int64_t> ends = stage_ends(2, 12);
    // Query out of order to exercise the on-demand extension.
    CHECK(sched.next_end(4) == ends[4]);
    CHECK(sched.next_end(0) == ends[0]);
    CHECK(sched.next_end(11) == ends[11]);
    for (std::size_t i = 0; i < ends.size(); ++i) CHECK(sched.next_end(i) == ends[i]);
}

TEST_CASE("stage machinery rejects bad arguments") {
    CHECK_THROWS_AS(stage_lengths(0, 3), BadDimensions);
    CHECK_THROWS_AS(stage_lengths(2, 0), BadDimensions);
    CHECK_THROWS_AS(StageSchedule(0), BadDimensions);
}

TEST_CASE("stage count up to N stays within the logarithmic budget") {
    const std::int64_t n = 100000;
    for (int h : {1, 2, 3, 5}) {
        StageSchedule sched(h);
        std::int64_t stages = 0;
        while (sched.next_end(static_cast<std::size_t>(stages)) <= n) ++stages;
        const double budget =
            std::ceil((h + 1) * std::log(static_cast<double>(n) / h + 1.0)) + 1.0;
        CHECK(static_cast<double>(stages) <= budget);
        // And the schedule really does cross N at the reported stage.
        CHECK(sched.next_end(static_cast<std::size_t>(stages)) > n);
    }
}
