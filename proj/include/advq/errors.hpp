#pragma once

#include <stdexcept>
#include <string>

namespace advq {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadDimensions : Error {
    using Error::Error;
};

struct RowNotStochastic : Error {
    int step, state, action;
    double row_sum;
    RowNotStochastic(int h, int s, int a, double sum)
        : Error("transition row (h=" + std::to_string(h) + ",s=" + std::to_string(s) +
                ",a=" + std::to_string(a) + ") sums to " + std::to_string(sum)),
          step(h), state(s), action(a), row_sum(sum) {}
};

struct RewardOutOfRange : Error {
    int step, state, action;
    double value;
    RewardOutOfRange(int h, int s, int a, double v)
        : Error("reward (h=" + std::to_string(h) + ",s=" + std::to_string(s) +
                ",a=" + std::to_string(a) + ") = " + std::to_string(v) + " outside [0,1]"),
          step(h), state(s), action(a), value(v) {}
};

// No strictly positive suboptimality gap: every action optimal everywhere.
struct DegenerateMdp : Error {
    using Error::Error;
};

struct GenerationFailed : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct MissingField : InvalidConfig {
    std::string field;
    explicit MissingField(std::string name)
        : InvalidConfig("missing required config field: " + name), field(std::move(name)) {}
};

struct OutOfRange : InvalidConfig {
    std::string field;
    OutOfRange(std::string name, const std::string& detail)
        : InvalidConfig("config field out of range: " + name + " (" + detail + ")"),
          field(std::move(name)) {}
};

struct TooShort : Error {
    using Error::Error;
};

}  // namespace advq
