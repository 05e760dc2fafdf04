#pragma once

#include <functional>

#include <Eigen/Dense>

namespace crashspat {

// Objective callback: returns f(x); fills *grad when non-null.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct OptimizerOptions {
    int max_iterations = 500;
    // Converged when ||grad||_inf < gradient_tolerance * max(1, |f|).
    double gradient_tolerance = 1e-5;
    double armijo_c1 = 1e-4;
    double min_step = 1e-14;
};

struct OptimizerResult {
    Eigen::VectorXd x;
    double f = 0.0;
    Eigen::VectorXd gradient;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

// Quasi-Newton minimizer: BFGS update on the inverse Hessian, backtracking
// Armijo line search, identity reset when a direction or curvature pair goes
// bad. Deterministic for a deterministic objective.
OptimizerResult minimize_bfgs(const Objective& objective, Eigen::VectorXd x0,
                              const OptimizerOptions& options = {});

} // namespace crashspat
