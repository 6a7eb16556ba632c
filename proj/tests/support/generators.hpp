// generators.hpp: seeded random models for property tests

#pragma once

#include "routersim/params.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace testgen {

class ModelGenerator {
public:
    explicit ModelGenerator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    std::size_t count(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    // 1–4 emitters at random increasing delays, α ∈ [0.01, 0.4], ν ∈ [2, 12].
    routersim::DimensionlessModel model(std::size_t max_emitters = 4) {
        const std::size_t n = count(1, max_emitters);
        std::vector<double> offsets{0.0};
        for (std::size_t j = 1; j < n; ++j) {
            offsets.push_back(offsets.back() + uniform(0.02, 1.5));
        }
        return {uniform(0.01, 0.4), uniform(2.0, 12.0), uniform(0.2, 3.0), offsets};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testgen
