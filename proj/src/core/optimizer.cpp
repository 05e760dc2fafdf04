#include "core/optimizer.hpp"

#include <cmath>

#include "core/error.hpp"

namespace crashspat {

namespace {

bool is_finite(double v) { return std::isfinite(v); }

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

} // namespace

OptimizerResult minimize_bfgs(const Objective& objective, Eigen::VectorXd x0,
                              const OptimizerOptions& options) {
    const Eigen::Index dim = x0.size();
    require(dim > 0, ErrorCode::InvalidArgument, "empty parameter vector");

    OptimizerResult result;
    result.x = std::move(x0);
    result.gradient.resize(dim);

    Eigen::VectorXd grad(dim);
    double f = objective(result.x, &grad);
    int evals = 1;
    require(is_finite(f) && all_finite(grad), ErrorCode::Domain,
            "objective not finite at the starting point");

    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd x_new(dim);
    Eigen::VectorXd grad_new(dim);

    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        const double scale = std::max(1.0, std::abs(f));
        if (grad.lpNorm<Eigen::Infinity>() < options.gradient_tolerance * scale) {
            converged = true;
            break;
        }

        Eigen::VectorXd direction = -(h_inv * grad);
        double slope = grad.dot(direction);
        if (!(slope < 0.0) || !all_finite(direction)) {
            // Stale curvature; restart as steepest descent.
            h_inv.setIdentity();
            direction = -grad;
            slope = grad.dot(direction);
        }

        // Backtracking Armijo search.
        double step = 1.0;
        double f_new = f;
        bool accepted = false;
        while (step >= options.min_step) {
            x_new = result.x + step * direction;
            f_new = objective(x_new, nullptr);
            ++evals;
            if (is_finite(f_new) && f_new <= f + options.armijo_c1 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // no usable descent step left

        f_new = objective(x_new, &grad_new);
        ++evals;
        if (!is_finite(f_new) || !all_finite(grad_new)) break;

        const Eigen::VectorXd s = x_new - result.x;
        const Eigen::VectorXd y = grad_new - grad;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            // H <- (I - rho s y') H (I - rho y s') + rho s s'
            const Eigen::VectorXd hy = h_inv * y;
            const double yhy = y.dot(hy);
            h_inv += (sy + yhy) * rho * rho * (s * s.transpose());
            h_inv -= rho * (hy * s.transpose() + s * hy.transpose());
        } else {
            h_inv.setIdentity();
        }

        result.x = x_new;
        f = f_new;
        grad = grad_new;
    }

    result.f = f;
    result.gradient = grad;
    result.iterations = iter;
    result.evaluations = evals;
    result.converged =
        converged || grad.lpNorm<Eigen::Infinity>() <
                         options.gradient_tolerance * std::max(1.0, std::abs(f));
    return result;
}

} // namespace crashspat
