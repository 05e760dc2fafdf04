#include "spatial/moran.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/special_functions.hpp"

namespace crashspat {

namespace {

struct Deviations {
    std::vector<double> d;
    double sum_d2 = 0.0;
    double sum_d4 = 0.0;
};

Deviations deviations(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    Deviations out;
    out.d.reserve(x.size());
    for (double v : x) {
        double di = v - mean;
        out.d.push_back(di);
        out.sum_d2 += di * di;
        out.sum_d4 += di * di * di * di;
    }
    return out;
}

void check_inputs(const std::vector<double>& x, const SpatialWeights& w, double sum_d2) {
    require(x.size() == w.n, ErrorCode::InvalidArgument,
            "attribute vector length does not match weights");
    require(x.size() >= 2, ErrorCode::DegenerateInput, "need at least two cells");
    require(sum_d2 > 0.0, ErrorCode::DegenerateInput, "constant attribute vector");
    require(w.link_count() > 0, ErrorCode::DegenerateInput, "weights link no pairs");
}

double cross_product(const std::vector<double>& d, const SpatialWeights& w) {
    double total = 0.0;
    for (std::size_t i = 0; i < w.n; ++i) {
        double nb_sum = 0.0;
        for (std::uint32_t j : w.neighbors[i]) nb_sum += d[j];
        total += d[i] * nb_sum;
    }
    return total;
}

} // namespace

double morans_i(const std::vector<double>& x, const SpatialWeights& w) {
    Deviations dev = deviations(x);
    check_inputs(x, w, dev.sum_d2);
    const double s0 = static_cast<double>(w.link_count());
    const double n = static_cast<double>(x.size());
    return (n / s0) * cross_product(dev.d, w) / dev.sum_d2;
}

double morans_expectation(std::size_t n) {
    require(n >= 2, ErrorCode::Domain, "expectation needs n >= 2");
    return -1.0 / (static_cast<double>(n) - 1.0);
}

double morans_variance(const std::vector<double>& x, const SpatialWeights& w) {
    Deviations dev = deviations(x);
    check_inputs(x, w, dev.sum_d2);
    const double n = static_cast<double>(x.size());
    require(x.size() >= 4, ErrorCode::DegenerateInput,
            "randomization variance needs n >= 4");

    // Binary symmetric weights: every stored link is an ordered pair with
    // w_ij = w_ji = 1.
    const double s0 = static_cast<double>(w.link_count());
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < w.n; ++i) {
        const double degree = static_cast<double>(w.neighbors[i].size());
        s1 += 4.0 * degree; // sum_j (w_ij + w_ji)^2 over neighbors of i
        s2 += (2.0 * degree) * (2.0 * degree);
    }
    s1 *= 0.5;

    const double b2 = n * dev.sum_d4 / (dev.sum_d2 * dev.sum_d2);
    const double num_a = n * ((n * n - 3.0 * n + 3.0) * s1 - n * s2 + 3.0 * s0 * s0);
    const double num_b = b2 * ((n * n - n) * s1 - 2.0 * n * s2 + 6.0 * s0 * s0);
    const double denom = (n - 1.0) * (n - 2.0) * (n - 3.0) * s0 * s0;
    const double e_i = -1.0 / (n - 1.0);
    return (num_a - num_b) / denom - e_i * e_i;
}

MoranResult morans_i_test(const std::vector<double>& x, const SpatialWeights& w) {
    MoranResult result;
    result.I = morans_i(x, w);
    result.expectation = morans_expectation(x.size());
    result.variance = morans_variance(x, w);
    require(result.variance > 0.0, ErrorCode::DegenerateInput,
            "nonpositive variance of Moran's I");
    result.z = (result.I - result.expectation) / std::sqrt(result.variance);
    result.p_two_sided = num::norm_two_sided_p(result.z);
    result.significant_95 = std::abs(result.z) > 1.96;
    return result;
}

MoranPermutation moran_permutation(const std::vector<double>& x, const SpatialWeights& w,
                                   int n_permutations, std::uint64_t seed) {
    require(n_permutations > 0, ErrorCode::InvalidArgument, "need at least one permutation");
    const double observed = morans_i(x, w);

    Rng rng(seed);
    std::vector<double> shuffled = x;
    double sum = 0.0;
    double sum_sq = 0.0;
    int at_least_as_extreme = 0;
    const double obs_dev = std::abs(observed - morans_expectation(x.size()));
    for (int p = 0; p < n_permutations; ++p) {
        rng.shuffle(shuffled);
        const double value = morans_i(shuffled, w);
        sum += value;
        sum_sq += value * value;
        if (std::abs(value - morans_expectation(x.size())) >= obs_dev - 1e-15) {
            ++at_least_as_extreme;
        }
    }
    MoranPermutation out;
    const double m = static_cast<double>(n_permutations);
    out.mean = sum / m;
    out.variance = sum_sq / m - out.mean * out.mean;
    out.p_two_sided = (static_cast<double>(at_least_as_extreme) + 1.0) / (m + 1.0);
    return out;
}

} // namespace crashspat
