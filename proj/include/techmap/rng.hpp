#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace techmap {

// Thin wrapper over mt19937_64 with fully specified derivations, so the
// same seed yields the same stream on every platform. std::uniform_*
// distributions are implementation-defined and must not be used here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Modulo bias is irrelevant at 64 bits for
    // the bounds used in this project.
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    // Uniform real in [0, 1) with 53 bits of precision.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

    // Sample an index proportionally to the given nonnegative weights.
    // All-zero weights fall back to the uniform choice.
    std::size_t weighted_index(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (total <= 0.0) return static_cast<std::size_t>(uniform_index(weights.size()));
        double target = uniform_real() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (target < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace techmap
