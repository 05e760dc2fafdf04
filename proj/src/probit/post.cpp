#include "probit/post.hpp"

#include <array>
#include <cmath>

#include "core/error.hpp"
#include "core/special_functions.hpp"
#include "probit/ordered_probit.hpp"

namespace crashspat {

namespace {

// Mean of each random coefficient for one design row (beta plus shifted
// means, before the draw term).
Eigen::VectorXd random_means(const Design::Row& row, const ParamLayout& layout,
                             const Eigen::VectorXd& params) {
    Eigen::VectorXd means(layout.n_random);
    int eta_pos = layout.eta_offset();
    for (int d = 0; d < layout.n_random; ++d) {
        double mean_d = params[layout.random_offset() + d];
        const int n_shift = layout.shifter_counts[static_cast<std::size_t>(d)];
        if (n_shift > 0) {
            mean_d += params.segment(eta_pos, n_shift)
                          .dot(row.shifters[static_cast<std::size_t>(d)]);
        }
        eta_pos += n_shift;
        means[d] = mean_d;
    }
    return means;
}

std::array<double, 3> average_probs(const Eigen::VectorXd& fixed, const Eigen::VectorXd& means,
                                    const Eigen::VectorXd& random, const ParamLayout& layout,
                                    const Eigen::VectorXd& params, const Eigen::MatrixXd& mixed,
                                    double u1) {
    const auto beta_fixed = params.segment(layout.fixed_offset(), layout.n_fixed);
    const double base = fixed.dot(beta_fixed) + random.dot(means);
    std::array<double, 3> probs{0.0, 0.0, 0.0};
    const Eigen::Index n_draws = mixed.rows();
    for (Eigen::Index r = 0; r < n_draws; ++r) {
        double xb = base;
        for (int d = 0; d < layout.n_random; ++d) xb += random[d] * mixed(r, d);
        const CategoryProbs p = category_probabilities(xb, u1);
        probs[0] += p.p0;
        probs[1] += p.p1;
        probs[2] += p.p2;
    }
    const double inv = 1.0 / static_cast<double>(n_draws);
    return {probs[0] * inv, probs[1] * inv, probs[2] * inv};
}

} // namespace

double random_param_stddev(const Eigen::MatrixXd& gamma, int k) {
    require(k >= 0 && k < gamma.rows(), ErrorCode::InvalidArgument,
            "random coefficient index out of range");
    return gamma.row(k).norm();
}

Eigen::MatrixXd random_param_covariance(const Eigen::MatrixXd& gamma) {
    return gamma * gamma.transpose();
}

Eigen::MatrixXd random_param_correlation(const Eigen::MatrixXd& gamma) {
    const Eigen::MatrixXd cov = random_param_covariance(gamma);
    const Eigen::Index n = cov.rows();
    Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        require(cov(i, i) > 0.0, ErrorCode::DegenerateInput,
                "zero-variance random coefficient at index " + std::to_string(i));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) corr(i, j) = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
        }
    }
    return corr;
}

std::pair<double, double> share_above_zero(double mu, double sigma) {
    require(sigma >= 0.0, ErrorCode::InvalidArgument, "negative standard deviation");
    if (sigma == 0.0) {
        if (mu > 0.0) return {1.0, 0.0};
        if (mu < 0.0) return {0.0, 1.0};
        return {0.5, 0.5};
    }
    const double above = 1.0 - num::norm_cdf(-mu / sigma);
    return {above, 1.0 - above};
}

std::array<double, 3> predicted_shares(const Design& design, const ParamLayout& layout,
                                       const Eigen::VectorXd& params,
                                       const Eigen::MatrixXd& draws) {
    const double u1 = std::exp(params[layout.theta_offset()]);
    const Eigen::MatrixXd gamma = layout.unpack_gamma(params);
    const Eigen::MatrixXd mixed = draws * gamma.transpose();
    const double inv_obs = 1.0 / static_cast<double>(design.n_obs);
    std::array<double, 3> shares{0.0, 0.0, 0.0};
    for (const Design::Row& row : design.rows) {
        const Eigen::VectorXd means = random_means(row, layout, params);
        const std::array<double, 3> probs =
            average_probs(row.fixed, means, row.random, layout, params, mixed, u1);
        for (std::size_t j = 0; j < 3; ++j) shares[j] += row.weight * inv_obs * probs[j];
    }
    return shares;
}

std::vector<MarginalEffect> marginal_effects_analytic(const Design& design,
                                                      const ParamLayout& layout,
                                                      const Eigen::VectorXd& params,
                                                      const Eigen::MatrixXd& draws) {
    const double u1 = std::exp(params[layout.theta_offset()]);
    const Eigen::MatrixXd gamma = layout.unpack_gamma(params);
    const Eigen::MatrixXd mixed = draws * gamma.transpose();
    const double inv_draws = 1.0 / static_cast<double>(draws.rows());
    const double inv_obs = 1.0 / static_cast<double>(design.n_obs);

    std::vector<MarginalEffect> effects;
    std::vector<std::pair<bool, int>> slots; // (is_random, slot index)
    for (std::size_t k = 0; k < design.fixed_names.size(); ++k) {
        if (design.fixed_names[k] == intercept_name) continue;
        effects.push_back({design.fixed_names[k], 0.0, 0.0, 0.0});
        slots.push_back({false, static_cast<int>(k)});
    }
    for (std::size_t k = 0; k < design.random_names.size(); ++k) {
        if (design.random_names[k] == intercept_name) continue;
        effects.push_back({design.random_names[k], 0.0, 0.0, 0.0});
        slots.push_back({true, static_cast<int>(k)});
    }

    const auto beta_fixed = params.segment(layout.fixed_offset(), layout.n_fixed);
    for (const Design::Row& row : design.rows) {
        const Eigen::VectorXd means = random_means(row, layout, params);
        const double base = row.fixed.dot(beta_fixed) + row.random.dot(means);
        const double w = row.weight * inv_obs * inv_draws;
        for (Eigen::Index r = 0; r < draws.rows(); ++r) {
            double xb = base;
            for (int d = 0; d < layout.n_random; ++d) xb += row.random[d] * mixed(r, d);
            const double pdf_lo = num::norm_pdf(-xb);      // density at threshold 0
            const double pdf_hi = num::norm_pdf(u1 - xb);  // density at threshold u1
            for (std::size_t v = 0; v < slots.size(); ++v) {
                const auto [is_random, slot] = slots[v];
                const double coef =
                    is_random ? means[slot] + mixed(r, slot) : beta_fixed[slot];
                effects[v].d_none += w * (-pdf_lo) * coef;
                effects[v].d_minor += w * (pdf_lo - pdf_hi) * coef;
                effects[v].d_serious += w * pdf_hi * coef;
            }
        }
    }
    return effects;
}

std::vector<MarginalEffect> marginal_effects_discrete(const Design& design,
                                                      const ParamLayout& layout,
                                                      const Eigen::VectorXd& params,
                                                      const Eigen::MatrixXd& draws) {
    const double u1 = std::exp(params[layout.theta_offset()]);
    const Eigen::MatrixXd gamma = layout.unpack_gamma(params);
    const Eigen::MatrixXd mixed = draws * gamma.transpose();
    const double inv_obs = 1.0 / static_cast<double>(design.n_obs);

    // Every covariate with any role, first-appearance order.
    std::vector<std::string> variables;
    auto add_var = [&variables](const std::string& name) {
        if (name == intercept_name) return;
        for (const auto& v : variables) {
            if (v == name) return;
        }
        variables.push_back(name);
    };
    for (const auto& v : design.fixed_names) add_var(v);
    for (const auto& v : design.random_names) add_var(v);
    for (const auto& names : design.shifter_names) {
        for (const auto& v : names) add_var(v);
    }

    std::vector<MarginalEffect> effects;
    effects.reserve(variables.size());
    for (const auto& variable : variables) {
        MarginalEffect effect{variable, 0.0, 0.0, 0.0};
        for (const Design::Row& row : design.rows) {
            std::array<std::array<double, 3>, 2> probs_at{};
            for (int bit = 0; bit <= 1; ++bit) {
                Design::Row forced = row;
                const double value = static_cast<double>(bit);
                for (std::size_t k = 0; k < design.fixed_names.size(); ++k) {
                    if (design.fixed_names[k] == variable) {
                        forced.fixed[static_cast<Eigen::Index>(k)] = value;
                    }
                }
                for (std::size_t k = 0; k < design.random_names.size(); ++k) {
                    if (design.random_names[k] == variable) {
                        forced.random[static_cast<Eigen::Index>(k)] = value;
                    }
                }
                for (std::size_t rr = 0; rr < design.shifter_names.size(); ++rr) {
                    for (std::size_t s = 0; s < design.shifter_names[rr].size(); ++s) {
                        if (design.shifter_names[rr][s] == variable) {
                            forced.shifters[rr][static_cast<Eigen::Index>(s)] = value;
                        }
                    }
                }
                const Eigen::VectorXd means = random_means(forced, layout, params);
                probs_at[static_cast<std::size_t>(bit)] = average_probs(
                    forced.fixed, means, forced.random, layout, params, mixed, u1);
            }
            const double w = row.weight * inv_obs;
            effect.d_none += w * (probs_at[1][0] - probs_at[0][0]);
            effect.d_minor += w * (probs_at[1][1] - probs_at[0][1]);
            effect.d_serious += w * (probs_at[1][2] - probs_at[0][2]);
        }
        effects.push_back(effect);
    }
    return effects;
}

} // namespace crashspat
