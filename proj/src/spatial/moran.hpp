#pragma once

#include <cstdint>
#include <vector>

#include "raster/weights.hpp"

namespace crashspat {

struct MoranResult {
    double I = 0.0;
    double expectation = 0.0; // -1/(n-1)
    double variance = 0.0;    // randomization assumption
    double z = 0.0;
    double p_two_sided = 1.0;
    bool significant_95 = false; // |z| > 1.96
};

// Global autocorrelation statistic (n/S0) * sum_ij w_ij d_i d_j / sum_i d_i^2
// with d the deviations from the mean. Degenerate for constant x; weights
// must link at least one pair.
double morans_i(const std::vector<double>& x, const SpatialWeights& w);

// Exact mean of I under random permutation of x.
double morans_expectation(std::size_t n);

// Randomization-assumption variance of I; uses the kurtosis of x and the
// weight sums S0, S1, S2. Defined for n >= 4, degenerate below.
double morans_variance(const std::vector<double>& x, const SpatialWeights& w);

// Full test: I, moments, z score, two-sided normal p-value.
MoranResult morans_i_test(const std::vector<double>& x, const SpatialWeights& w);

struct MoranPermutation {
    double mean = 0.0;     // empirical mean of I over permutations
    double variance = 0.0; // empirical variance
    double p_two_sided = 1.0;
};

// Monte-Carlo reference distribution of I under random relabeling. Test
// harness companion to the analytic moments; not used by the pipeline.
MoranPermutation moran_permutation(const std::vector<double>& x, const SpatialWeights& w,
                                   int n_permutations, std::uint64_t seed);

} // namespace crashspat
