#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace advq {

// Seeded generator with explicit double conversion so that streams are
// reproducible bit-for-bit regardless of the standard library's
// distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    double exponential() { return -std::log1p(-uniform()); }

    // Index sampled from a probability row (assumed to sum to ~1).
    int categorical(std::span<const double> probs) {
        const double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        // u landed in the rounding slack past the last cumulative sum.
        for (std::size_t i = probs.size(); i-- > 0;) {
            if (probs[i] > 0.0) return static_cast<int>(i);
        }
        return 0;
    }

  private:
    std::mt19937_64 engine_;
};

// FNV-1a, used for stable config hashes in run records.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace advq
