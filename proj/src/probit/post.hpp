#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "probit/model_spec.hpp"

namespace crashspat {

// Standard deviation of random coefficient k: Euclidean norm of row k of
// the Cholesky factor.
double random_param_stddev(const Eigen::MatrixXd& gamma, int k);

// Gram product of the Cholesky factor.
Eigen::MatrixXd random_param_covariance(const Eigen::MatrixXd& gamma);

// Correlations from the Gram product; degenerate when any row norm is zero.
Eigen::MatrixXd random_param_correlation(const Eigen::MatrixXd& gamma);

// Mass of N(mu, sigma^2) above and below zero. sigma = 0 degenerates to the
// point mass on the sign of mu (half/half at mu = 0, the sigma -> 0 limit).
std::pair<double, double> share_above_zero(double mu, double sigma);

struct MarginalEffect {
    std::string variable;
    double d_none = 0.0;
    double d_minor = 0.0;
    double d_serious = 0.0;
};

// Observation-averaged category probabilities (none, minor, serious) at the
// given parameters.
std::array<double, 3> predicted_shares(const Design& design, const ParamLayout& layout,
                                       const Eigen::VectorXd& params,
                                       const Eigen::MatrixXd& draws);

// Density-difference effects per coefficient-bearing variable (intercept
// excluded): [pdf(u_{j-1} - xb) - pdf(u_j - xb)] * beta, averaged over
// observations and draws.
std::vector<MarginalEffect> marginal_effects_analytic(const Design& design,
                                                      const ParamLayout& layout,
                                                      const Eigen::VectorXd& params,
                                                      const Eigen::MatrixXd& draws);

// Discrete differences for binary indicators: average probabilities with the
// variable forced to 1 minus forced to 0, every channel included (own
// coefficient and any mean-shifter role). Covers each covariate appearing
// anywhere in the model.
std::vector<MarginalEffect> marginal_effects_discrete(const Design& design,
                                                      const ParamLayout& layout,
                                                      const Eigen::VectorXd& params,
                                                      const Eigen::MatrixXd& draws);

} // namespace crashspat
