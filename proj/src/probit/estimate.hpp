#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/optimizer.hpp"
#include "probit/model_spec.hpp"
#include "probit/post.hpp"

namespace crashspat {

struct EstimateOptions {
    OptimizerOptions optimizer;
    // Fit fixed -> diagonal -> correlated, each stage starting from the
    // previous optimum. Keeps the staged optima nested.
    bool staged_warm_start = true;
    bool compute_marginals = true;
    // Relative step for the finite-difference Hessian of the gradient.
    double hessian_step = 1e-5;
};

struct RandomParamSummary {
    std::string name;
    double mean = 0.0;      // location part of the coefficient (shifters at 0)
    double stddev = 0.0;    // row norm of the Cholesky factor
    double pct_above = 0.0; // mass of the mixing distribution above zero
    double pct_below = 0.0;
};

struct EstimationResult {
    ModelSpec spec;
    std::vector<std::string> param_names;
    Eigen::VectorXd estimates;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    std::vector<bool> significant_90; // |t| >= 1.645 report flag

    double threshold_u1 = 0.0;
    double ll = 0.0;
    double ll0 = 0.0;
    double aic = 0.0;
    double rho2 = 0.0;
    int k = 0;
    std::size_t n_obs = 0;
    std::array<std::size_t, 3> class_counts{};
    std::array<double, 3> predicted_shares{};

    bool converged = false;
    int iterations = 0;
    double gradient_inf_norm = 0.0;
    bool opg_fallback = false;
    std::size_t clamped_likelihoods = 0;

    Eigen::MatrixXd gamma;       // lower-triangular Cholesky factor
    Eigen::MatrixXd covariance;  // gamma * gamma'
    Eigen::MatrixXd correlation; // empty when any random variance is zero
    std::vector<RandomParamSummary> random_summaries;
    std::vector<MarginalEffect> marginal_analytic;
    std::vector<MarginalEffect> marginal_discrete;

    std::vector<std::string> warnings;
};

// Maximum simulated likelihood fit of the ordered probit defined by `spec`.
// Standard errors come from the inverse negative finite-difference Hessian,
// falling back to the outer product of gradients (with a warning) when that
// is not positive definite.
EstimationResult estimate(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                          const EstimateOptions& options = {});

// Closed-form maximum of the thresholds-only model: class shares are fitted
// exactly, so the value is sum n_j ln(n_j / n).
double thresholds_only_loglik(const std::array<std::size_t, 3>& class_counts);

// Log-likelihood of a packed parameter vector for `spec` evaluated on
// `records` (no re-estimation, no rank requirement on the data).
double evaluate_loglik(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                       const Eigen::VectorXd& params);

} // namespace crashspat
