#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "probit/model_spec.hpp"

namespace crashspat {

struct CategoryProbs {
    double p0 = 0.0; // no injury
    double p1 = 0.0; // minor injury
    double p2 = 0.0; // serious injury
};

// Three-category ordered probit probabilities at linear index xb with lower
// threshold fixed at 0 and upper threshold u1 > 0.
CategoryProbs category_probabilities(double xb, double u1);

// One simulated coefficient vector for the random block:
// beta + (eta_r . shifters_r per var) + gamma * omega.
Eigen::VectorXd draw_coefficients(const Eigen::VectorXd& beta_mean,
                                  const std::vector<Eigen::VectorXd>& eta,
                                  const std::vector<Eigen::VectorXd>& shifters,
                                  const Eigen::MatrixXd& gamma, const Eigen::VectorXd& omega);

struct SimDiagnostics {
    // Simulated likelihoods clamped at the positive floor instead of
    // underflowing to zero.
    std::size_t clamped = 0;
};

inline constexpr double likelihood_floor = 1e-300;

// Draw-averaged log-likelihood: sum over design rows of weight * ln of the
// mean category probability across draws. `draws` holds one standard-normal
// row per draw (n_draws x n_random); every observation shares it. The
// reduction order is fixed by the design's canonical row order.
double simulated_loglik(const Design& design, const ParamLayout& layout,
                        const Eigen::VectorXd& params, const Eigen::MatrixXd& draws,
                        SimDiagnostics* diag = nullptr);

// Same value, plus the analytic gradient. When `scores` is non-null it is
// resized to rows x params and row g receives that pattern's per-observation
// score (not multiplied by the row weight).
double simulated_loglik_grad(const Design& design, const ParamLayout& layout,
                             const Eigen::VectorXd& params, const Eigen::MatrixXd& draws,
                             Eigen::VectorXd& grad, SimDiagnostics* diag = nullptr,
                             Eigen::MatrixXd* scores = nullptr);

} // namespace crashspat
