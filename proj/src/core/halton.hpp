#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace crashspat {

// Radical inverse of `index` in a prime base; value in (0, 1). Index 0 is a
// domain error (its radical inverse is 0, which cannot feed the normal
// inverse CDF).
double halton(std::uint64_t index, unsigned base);

// First `dims` primes, one base per dimension: 2, 3, 5, 7, ...
std::vector<unsigned> halton_bases(std::size_t dims);

// n_draws x dims matrix of standard-normal values: Halton points mapped
// through the inverse normal CDF, first `skip` points of each sequence
// discarded. Row r is the r-th draw, shared by every observation.
Eigen::MatrixXd halton_normal_draws(std::size_t n_draws, std::size_t dims, std::size_t skip = 10);

} // namespace crashspat
