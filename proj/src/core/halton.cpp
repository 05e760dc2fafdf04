#include "core/halton.hpp"

#include "core/error.hpp"
#include "core/special_functions.hpp"

namespace crashspat {

double halton(std::uint64_t index, unsigned base) {
    require(index >= 1, ErrorCode::Domain, "halton index starts at 1");
    require(base >= 2, ErrorCode::Domain, "halton base must be at least 2");
    double value = 0.0;
    double digit_weight = 1.0 / static_cast<double>(base);
    while (index > 0) {
        value += static_cast<double>(index % base) * digit_weight;
        index /= base;
        digit_weight /= static_cast<double>(base);
    }
    return value;
}

std::vector<unsigned> halton_bases(std::size_t dims) {
    std::vector<unsigned> primes;
    unsigned candidate = 2;
    while (primes.size() < dims) {
        bool is_prime = true;
        for (unsigned p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes;
}

Eigen::MatrixXd halton_normal_draws(std::size_t n_draws, std::size_t dims, std::size_t skip) {
    require(n_draws >= 1, ErrorCode::InvalidArgument, "need at least one draw");
    const std::vector<unsigned> bases = halton_bases(dims);
    Eigen::MatrixXd draws(n_draws, dims);
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t r = 0; r < n_draws; ++r) {
            draws(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) =
                num::norm_inv_cdf(halton(skip + r + 1, bases[d]));
        }
    }
    return draws;
}

} // namespace crashspat
