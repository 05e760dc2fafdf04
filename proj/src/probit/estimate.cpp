#include "probit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/halton.hpp"
#include "core/special_functions.hpp"
#include "probit/ordered_probit.hpp"

namespace crashspat {

namespace {

// Draw matrix for a layout: fixed models need no mixing, one dummy draw
// keeps the evaluation loop uniform.
Eigen::MatrixXd draws_for(const ModelSpec& spec, const ParamLayout& layout) {
    if (layout.n_random == 0) return Eigen::MatrixXd(1, 0);
    return halton_normal_draws(static_cast<std::size_t>(spec.n_draws),
                               static_cast<std::size_t>(layout.n_random),
                               static_cast<std::size_t>(spec.halton_skip));
}

Objective make_objective(const Design& design, const ParamLayout& layout,
                         const Eigen::MatrixXd& draws, SimDiagnostics* diag) {
    return [&design, &layout, &draws, diag](const Eigen::VectorXd& x,
                                            Eigen::VectorXd* grad) -> double {
        if (grad) {
            double ll = simulated_loglik_grad(design, layout, x, draws, *grad, diag);
            *grad = -*grad;
            return -ll;
        }
        return -simulated_loglik(design, layout, x, draws, diag);
    };
}

// Intercept and threshold seeds from the observed class shares.
void seed_from_shares(const std::array<std::size_t, 3>& counts, double& intercept,
                      double& theta) {
    const double n = static_cast<double>(counts[0] + counts[1] + counts[2]);
    double p0 = static_cast<double>(counts[0]) / n;
    double p01 = static_cast<double>(counts[0] + counts[1]) / n;
    p0 = std::clamp(p0, 1e-6, 1.0 - 2e-6);
    p01 = std::clamp(p01, p0 + 1e-6, 1.0 - 1e-6);
    const double z0 = num::norm_inv_cdf(p0);
    const double z1 = num::norm_inv_cdf(p01);
    intercept = -z0;
    theta = std::log(std::max(z1 - z0, 1e-3));
}

int name_index(const std::vector<std::string>& names, const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

// Copies stage-A fixed coefficients into the target layout by variable name:
// "beta:v" feeds either "beta:v" or "mean:v".
void map_by_name(const std::vector<std::string>& from_names, const Eigen::VectorXd& from,
                 const std::vector<std::string>& to_names, Eigen::VectorXd& to) {
    for (std::size_t i = 0; i < from_names.size(); ++i) {
        const std::string& name = from_names[i];
        int j = name_index(to_names, name);
        if (j < 0 && name.rfind("beta:", 0) == 0) {
            j = name_index(to_names, "mean:" + name.substr(5));
        }
        if (j < 0 && name.rfind("sd:", 0) == 0) {
            const std::string var = name.substr(3);
            j = name_index(to_names, "chol:" + var + ":" + var);
        }
        if (j >= 0) to[j] = from[static_cast<Eigen::Index>(i)];
    }
}

struct StageFit {
    Eigen::VectorXd x;
    double ll = 0.0; // log-likelihood (not the minimized objective)
    bool converged = false;
    int iterations = 0;
    double gradient_inf_norm = 0.0;
};

StageFit run_stage(const Design& design, const ParamLayout& layout,
                   const Eigen::MatrixXd& draws, const Eigen::VectorXd& x0,
                   const OptimizerOptions& options) {
    const Objective objective = make_objective(design, layout, draws, nullptr);
    OptimizerResult opt = minimize_bfgs(objective, x0, options);
    StageFit fit;
    fit.x = std::move(opt.x);
    fit.ll = -opt.f;
    fit.converged = opt.converged;
    fit.iterations = opt.iterations;
    fit.gradient_inf_norm = opt.gradient.lpNorm<Eigen::Infinity>();
    return fit;
}

// Negative-likelihood Hessian by central differences of the analytic
// gradient.
Eigen::MatrixXd fd_hessian(const Design& design, const ParamLayout& layout,
                           const Eigen::MatrixXd& draws, const Eigen::VectorXd& x,
                           double rel_step) {
    const Eigen::Index dim = x.size();
    Eigen::MatrixXd hessian(dim, dim);
    Eigen::VectorXd grad_plus(dim);
    Eigen::VectorXd grad_minus(dim);
    Eigen::VectorXd point = x;
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double h = rel_step * std::max(1.0, std::abs(x[j]));
        point[j] = x[j] + h;
        simulated_loglik_grad(design, layout, point, draws, grad_plus);
        point[j] = x[j] - h;
        simulated_loglik_grad(design, layout, point, draws, grad_minus);
        point[j] = x[j];
        hessian.col(j) = -(grad_plus - grad_minus) / (2.0 * h);
    }
    return 0.5 * (hessian + hessian.transpose());
}

} // namespace

double thresholds_only_loglik(const std::array<std::size_t, 3>& class_counts) {
    const double n = static_cast<double>(class_counts[0] + class_counts[1] + class_counts[2]);
    require(n > 0, ErrorCode::DegenerateInput, "no observations");
    double ll = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        const double nj = static_cast<double>(class_counts[j]);
        if (nj > 0) ll += nj * std::log(nj / n);
    }
    return ll;
}

double evaluate_loglik(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                       const Eigen::VectorXd& params) {
    const Design design = build_design(records, spec, /*check_rank=*/false);
    const ParamLayout layout = design.layout(spec);
    require(params.size() == layout.total(), ErrorCode::InvalidArgument,
            "parameter vector does not match the model layout");
    const Eigen::MatrixXd draws = draws_for(spec, layout);
    return simulated_loglik(design, layout, params, draws);
}

EstimationResult estimate(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                          const EstimateOptions& options) {
    EstimationResult result;
    result.spec = spec;

    const Design design = build_design(records, spec);
    const ParamLayout layout = design.layout(spec);
    const Eigen::MatrixXd draws = draws_for(spec, layout);
    result.param_names = design.param_names(spec);
    result.k = layout.total();
    result.n_obs = design.n_obs;
    result.class_counts = design.class_counts;

    for (std::size_t j = 0; j < 3; ++j) {
        if (design.class_counts[j] == 0) {
            result.warnings.push_back("severity class " + std::to_string(j) +
                                      " absent: threshold identification is weak");
        }
    }

    double seed_intercept = 0.0;
    double seed_theta = 0.0;
    seed_from_shares(design.class_counts, seed_intercept, seed_theta);

    // Stage A: every covariate fixed, heterogeneity switched off.
    ModelSpec spec_a;
    spec_a.fixed_vars = spec.fixed_vars;
    spec_a.fixed_vars.insert(spec_a.fixed_vars.end(), spec.random_vars.begin(),
                             spec.random_vars.end());
    spec_a.n_draws = 1;
    spec_a.halton_skip = spec.halton_skip;

    const bool staged = options.staged_warm_start && layout.n_random > 0;
    StageFit final_fit;

    if (!staged) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(layout.total());
        const int const_slot = name_index(result.param_names, std::string("beta:") + intercept_name);
        const int const_mean = name_index(result.param_names, std::string("mean:") + intercept_name);
        if (const_slot >= 0) x0[const_slot] = seed_intercept;
        if (const_mean >= 0) x0[const_mean] = seed_intercept;
        x0[layout.theta_offset()] = seed_theta;
        // Diagonal spread starts small but away from the flat point at zero.
        int pos = layout.gamma_offset();
        if (layout.correlated) {
            for (int r = 0; r < layout.n_random; ++r) {
                for (int c = 0; c <= r; ++c) x0[pos++] = (r == c) ? 0.1 : 0.0;
            }
        } else {
            for (int r = 0; r < layout.n_random; ++r) x0[pos++] = 0.1;
        }
        final_fit = run_stage(design, layout, draws, x0, options.optimizer);
    } else {
        const Design design_a = build_design(records, spec_a);
        const ParamLayout layout_a = design_a.layout(spec_a);
        const Eigen::MatrixXd draws_a = draws_for(spec_a, layout_a);
        Eigen::VectorXd xa = Eigen::VectorXd::Zero(layout_a.total());
        xa[name_index(design_a.param_names(spec_a), std::string("beta:") + intercept_name)] =
            seed_intercept;
        xa[layout_a.theta_offset()] = seed_theta;
        const StageFit fit_a =
            run_stage(design_a, layout_a, draws_a, xa, options.optimizer);

        // Stage B: diagonal mixing, warm-started from A. A second attempt
        // with a smaller spread start covers data with little heterogeneity;
        // the A point itself (zero spread) is the floor.
        ModelSpec spec_b = spec;
        spec_b.correlated = false;
        // B shares the variables, design rows, and draw matrix of the final
        // model; only the gamma packing differs.
        const Design& design_b = design;
        const ParamLayout layout_b = design_b.layout(spec_b);
        const Eigen::MatrixXd& draws_b = draws;
        const std::vector<std::string> names_a = design_a.param_names(spec_a);
        const std::vector<std::string> names_b = design_b.param_names(spec_b);

        Eigen::VectorXd base_b = Eigen::VectorXd::Zero(layout_b.total());
        map_by_name(names_a, fit_a.x, names_b, base_b);
        base_b[layout_b.theta_offset()] = fit_a.x[layout_a.theta_offset()];

        StageFit fit_b;
        fit_b.ll = -std::numeric_limits<double>::infinity();
        for (const double start_sd : {0.1, 1e-4}) {
            Eigen::VectorXd xb = base_b;
            for (int g = layout_b.gamma_offset(); g < layout_b.theta_offset(); ++g) {
                xb[g] = start_sd;
            }
            const StageFit attempt = run_stage(design_b, layout_b, draws_b, xb, options.optimizer);
            if (attempt.ll > fit_b.ll) fit_b = attempt;
            if (fit_b.ll >= fit_a.ll - 1e-9) break;
        }
        {
            // Zero-spread floor: equals the stage-A optimum under B's draws.
            Eigen::VectorXd xb0 = base_b;
            const double ll_floor = simulated_loglik(design_b, layout_b, xb0, draws_b);
            if (ll_floor > fit_b.ll) {
                fit_b = StageFit{std::move(xb0), ll_floor, false, 0,
                                 std::numeric_limits<double>::quiet_NaN()};
                result.warnings.push_back(
                    "mixing stage failed to improve on the fixed fit; spread set to zero");
            }
        }

        if (!spec.correlated) {
            final_fit = fit_b;
        } else {
            // Stage C: full lower triangle, off-diagonals from zero at B's
            // optimum, so the start value equals B's optimum exactly.
            Eigen::VectorXd xc = Eigen::VectorXd::Zero(layout.total());
            map_by_name(names_b, fit_b.x, result.param_names, xc);
            xc[layout.theta_offset()] = fit_b.x[layout_b.theta_offset()];
            StageFit fit_c = run_stage(design, layout, draws, xc, options.optimizer);
            if (fit_c.ll < fit_b.ll) {
                const double ll_at_start = simulated_loglik(design, layout, xc, draws);
                if (ll_at_start > fit_c.ll) {
                    fit_c = StageFit{std::move(xc), ll_at_start, false, 0,
                                     std::numeric_limits<double>::quiet_NaN()};
                    result.warnings.push_back(
                        "correlation stage failed to improve on the diagonal fit");
                }
            }
            final_fit = fit_c;
        }
    }

    // Final diagnostics pass at the optimum.
    SimDiagnostics diag;
    Eigen::VectorXd grad(layout.total());
    Eigen::MatrixXd scores;
    result.ll =
        simulated_loglik_grad(design, layout, final_fit.x, draws, grad, &diag, &scores);
    result.estimates = final_fit.x;
    result.converged = final_fit.converged;
    result.iterations = final_fit.iterations;
    result.gradient_inf_norm = grad.lpNorm<Eigen::Infinity>();
    result.clamped_likelihoods = diag.clamped;
    result.threshold_u1 = std::exp(final_fit.x[layout.theta_offset()]);

    result.ll0 = thresholds_only_loglik(design.class_counts);
    result.aic = 2.0 * result.k - 2.0 * result.ll;
    result.rho2 = result.ll0 < 0.0 ? 1.0 - result.ll / result.ll0 : 0.0;

    // Covariance of the estimates: inverse negative Hessian, or the inverse
    // outer product of per-observation scores when that is not positive
    // definite.
    const Eigen::Index dim = layout.total();
    Eigen::MatrixXd hessian =
        fd_hessian(design, layout, draws, final_fit.x, options.hessian_step);
    Eigen::MatrixXd covariance;
    bool have_covariance = false;
    {
        Eigen::LLT<Eigen::MatrixXd> llt(hessian);
        if (llt.info() == Eigen::Success) {
            covariance = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
            have_covariance = covariance.diagonal().minCoeff() > 0.0;
        }
    }
    if (!have_covariance) {
        result.opg_fallback = true;
        result.warnings.push_back(
            "Hessian not positive definite; standard errors from the outer product of "
            "gradients");
        Eigen::MatrixXd opg = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t g = 0; g < design.rows.size(); ++g) {
            const Eigen::VectorXd s = scores.row(static_cast<Eigen::Index>(g)).transpose();
            opg.noalias() += design.rows[g].weight * (s * s.transpose());
        }
        Eigen::LLT<Eigen::MatrixXd> llt(opg);
        if (llt.info() == Eigen::Success) {
            covariance = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
            have_covariance = covariance.diagonal().minCoeff() > 0.0;
        }
    }
    result.std_errors.resize(dim);
    result.t_stats.resize(dim);
    result.significant_90.assign(static_cast<std::size_t>(dim), false);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double se =
            have_covariance ? std::sqrt(std::max(covariance(j, j), 0.0)) : 0.0;
        result.std_errors[j] = have_covariance ? se : std::numeric_limits<double>::quiet_NaN();
        result.t_stats[j] =
            se > 0.0 ? result.estimates[j] / se : std::numeric_limits<double>::quiet_NaN();
        result.significant_90[static_cast<std::size_t>(j)] =
            se > 0.0 && std::abs(result.t_stats[j]) >= 1.645;
    }
    if (!have_covariance) {
        result.warnings.push_back("standard errors unavailable: score matrix is singular");
    }

    result.predicted_shares = predicted_shares(design, layout, final_fit.x, draws);

    if (layout.n_random > 0) {
        result.gamma = layout.unpack_gamma(final_fit.x);
        result.covariance = random_param_covariance(result.gamma);
        double min_sigma = std::numeric_limits<double>::infinity();
        for (int d = 0; d < layout.n_random; ++d) {
            min_sigma = std::min(min_sigma, random_param_stddev(result.gamma, d));
        }
        if (min_sigma > 1e-12) {
            result.correlation = random_param_correlation(result.gamma);
        } else {
            result.warnings.push_back(
                "a random coefficient has zero spread; correlation matrix omitted");
        }
        for (int d = 0; d < layout.n_random; ++d) {
            RandomParamSummary summary;
            summary.name = design.random_names[static_cast<std::size_t>(d)];
            summary.mean = final_fit.x[layout.random_offset() + d];
            summary.stddev = random_param_stddev(result.gamma, d);
            const auto [above, below] = share_above_zero(summary.mean, summary.stddev);
            summary.pct_above = above;
            summary.pct_below = below;
            result.random_summaries.push_back(std::move(summary));
        }
    }

    if (options.compute_marginals) {
        result.marginal_analytic = marginal_effects_analytic(design, layout, final_fit.x, draws);
        result.marginal_discrete = marginal_effects_discrete(design, layout, final_fit.x, draws);
    }

    return result;
}

} // namespace crashspat
