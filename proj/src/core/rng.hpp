#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "core/error.hpp"
#include "core/special_functions.hpp"

namespace crashspat {

// Seeded generator with hand-rolled distributions. std::*_distribution is
// implementation-defined, which would break the byte-identical-outputs
// contract across toolchains; everything here consumes raw mt19937_64 words.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1), never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        require(n > 0, ErrorCode::InvalidArgument, "uniform_index: empty range");
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    double normal() { return num::norm_inv_cdf(uniform01()); }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Knuth's product method; adequate for the moderate rates used here.
    int poisson(double lambda) {
        require(lambda >= 0.0 && lambda <= 200.0, ErrorCode::InvalidArgument,
                "poisson: rate out of supported range");
        const double limit = std::exp(-lambda);
        int k = 0;
        double prod = uniform01();
        while (prod > limit) {
            ++k;
            prod *= uniform01();
        }
        return k;
    }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace crashspat
