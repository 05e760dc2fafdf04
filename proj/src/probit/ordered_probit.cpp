#include "probit/ordered_probit.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/special_functions.hpp"

namespace crashspat {

namespace {

// Running compensated sum (Neumaier): keeps the row reduction accurate
// enough that reordering equal inputs stays far below the 1e-10 contract.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value)) {
            compensation += (sum - t) + value;
        } else {
            compensation += (value - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + compensation; }
};

struct RowAccumulators {
    double sum_p = 0.0;      // sum over draws of the category probability
    double sum_dp = 0.0;     // sum of dP/dxb
    double sum_dp_u1 = 0.0;  // sum of dP/du1
    Eigen::VectorXd sum_dp_omega; // sum of dP/dxb * omega_r
};

// Per-draw category probability and derivatives for the observed class.
inline void eval_draw(int y, double xb, double u1, double& p, double& dp_dxb, double& dp_du1) {
    switch (y) {
        case 0: {
            p = num::norm_cdf(-xb);
            dp_dxb = -num::norm_pdf(-xb);
            dp_du1 = 0.0;
            break;
        }
        case 1: {
            const double hi = num::norm_cdf(u1 - xb);
            const double lo = num::norm_cdf(-xb);
            p = std::max(hi - lo, 0.0);
            const double pdf_hi = num::norm_pdf(u1 - xb);
            dp_dxb = num::norm_pdf(-xb) - pdf_hi;
            dp_du1 = pdf_hi;
            break;
        }
        default: {
            const double pdf_hi = num::norm_pdf(u1 - xb);
            p = 1.0 - num::norm_cdf(u1 - xb);
            dp_dxb = pdf_hi;
            dp_du1 = -pdf_hi;
            break;
        }
    }
}

double loglik_impl(const Design& design, const ParamLayout& layout,
                   const Eigen::VectorXd& params, const Eigen::MatrixXd& draws,
                   Eigen::VectorXd* grad, SimDiagnostics* diag, Eigen::MatrixXd* scores) {
    require(params.size() == layout.total(), ErrorCode::InvalidArgument,
            "parameter vector does not match layout");
    require(draws.cols() == layout.n_random, ErrorCode::InvalidArgument,
            "draw matrix does not match random dimension");
    require(draws.rows() >= 1, ErrorCode::InvalidArgument, "need at least one draw");

    const int n_random = layout.n_random;
    const Eigen::Index n_draws = draws.rows();
    const double inv_draws = 1.0 / static_cast<double>(n_draws);
    const auto beta_fixed = params.segment(layout.fixed_offset(), layout.n_fixed);
    const auto beta_random = params.segment(layout.random_offset(), n_random);
    const double theta = params[layout.theta_offset()];
    const double u1 = std::exp(theta);
    require(std::isfinite(u1) && u1 > 0.0, ErrorCode::Domain, "threshold out of range");

    const Eigen::MatrixXd gamma = layout.unpack_gamma(params);
    // Row r holds (gamma * omega_r)', shared by all observations.
    const Eigen::MatrixXd mixed = draws * gamma.transpose();

    if (grad) grad->setZero(layout.total());
    if (scores) scores->setZero(static_cast<Eigen::Index>(design.rows.size()), layout.total());

    CompensatedSum ll;
    RowAccumulators acc;
    acc.sum_dp_omega.resize(n_random);
    Eigen::VectorXd score(layout.total());

    for (std::size_t g = 0; g < design.rows.size(); ++g) {
        const Design::Row& row = design.rows[g];

        // Deterministic part of the linear index: fixed block plus random
        // means shifted by the heterogeneity-in-means terms.
        double base = row.fixed.dot(beta_fixed);
        int eta_pos = layout.eta_offset();
        for (int d = 0; d < n_random; ++d) {
            double mean_d = beta_random[d];
            const int n_shift = layout.shifter_counts[static_cast<std::size_t>(d)];
            if (n_shift > 0) {
                mean_d += params.segment(eta_pos, n_shift).dot(row.shifters[static_cast<std::size_t>(d)]);
            }
            eta_pos += n_shift;
            base += row.random[d] * mean_d;
        }

        acc.sum_p = 0.0;
        acc.sum_dp = 0.0;
        acc.sum_dp_u1 = 0.0;
        acc.sum_dp_omega.setZero();
        for (Eigen::Index r = 0; r < n_draws; ++r) {
            double xb = base;
            for (int d = 0; d < n_random; ++d) xb += row.random[d] * mixed(r, d);
            double p = 0.0;
            double dp_dxb = 0.0;
            double dp_du1 = 0.0;
            eval_draw(row.y, xb, u1, p, dp_dxb, dp_du1);
            acc.sum_p += p;
            if (grad) {
                acc.sum_dp += dp_dxb;
                acc.sum_dp_u1 += dp_du1;
                for (int d = 0; d < n_random; ++d) {
                    acc.sum_dp_omega[d] += dp_dxb * draws(r, d);
                }
            }
        }

        double likelihood = acc.sum_p * inv_draws;
        if (likelihood < likelihood_floor) {
            likelihood = likelihood_floor;
            if (diag) ++diag->clamped;
        }
        ll.add(row.weight * std::log(likelihood));

        if (!grad) continue;

        // Score of one observation carrying this pattern.
        const double c = inv_draws / likelihood;
        score.setZero();
        score.segment(layout.fixed_offset(), layout.n_fixed) = (c * acc.sum_dp) * row.fixed;
        int pos = layout.eta_offset();
        for (int d = 0; d < n_random; ++d) {
            const double sens_d = c * acc.sum_dp * row.random[d];
            score[layout.random_offset() + d] = sens_d;
            const int n_shift = layout.shifter_counts[static_cast<std::size_t>(d)];
            for (int s = 0; s < n_shift; ++s) {
                score[pos + s] = sens_d * row.shifters[static_cast<std::size_t>(d)][s];
            }
            pos += n_shift;
        }
        pos = layout.gamma_offset();
        if (layout.correlated) {
            for (int d = 0; d < n_random; ++d) {
                for (int e = 0; e <= d; ++e) {
                    score[pos++] = c * row.random[d] * acc.sum_dp_omega[e];
                }
            }
        } else {
            for (int d = 0; d < n_random; ++d) {
                score[pos++] = c * row.random[d] * acc.sum_dp_omega[d];
            }
        }
        score[layout.theta_offset()] = c * acc.sum_dp_u1 * u1;

        *grad += row.weight * score;
        if (scores) scores->row(static_cast<Eigen::Index>(g)) = score.transpose();
    }

    return ll.value();
}

} // namespace

CategoryProbs category_probabilities(double xb, double u1) {
    require(u1 > 0.0, ErrorCode::Domain, "upper threshold must be positive");
    CategoryProbs out;
    const double lo = num::norm_cdf(-xb);
    const double hi = num::norm_cdf(u1 - xb);
    out.p0 = lo;
    out.p1 = std::max(hi - lo, 0.0);
    out.p2 = 1.0 - hi;
    return out;
}

Eigen::VectorXd draw_coefficients(const Eigen::VectorXd& beta_mean,
                                  const std::vector<Eigen::VectorXd>& eta,
                                  const std::vector<Eigen::VectorXd>& shifters,
                                  const Eigen::MatrixXd& gamma, const Eigen::VectorXd& omega) {
    require(gamma.rows() == beta_mean.size() && gamma.cols() == beta_mean.size(),
            ErrorCode::InvalidArgument, "cholesky dimension mismatch");
    require(omega.size() == beta_mean.size(), ErrorCode::InvalidArgument,
            "draw dimension mismatch");
    require(eta.size() == static_cast<std::size_t>(beta_mean.size()) &&
                shifters.size() == eta.size(),
            ErrorCode::InvalidArgument, "mean shifter blocks do not match random dimension");
    Eigen::VectorXd beta = beta_mean + gamma * omega;
    for (std::size_t d = 0; d < eta.size(); ++d) {
        require(eta[d].size() == shifters[d].size(), ErrorCode::InvalidArgument,
                "mean shifter values do not match coefficients");
        if (eta[d].size() > 0) beta[static_cast<Eigen::Index>(d)] += eta[d].dot(shifters[d]);
    }
    return beta;
}

double simulated_loglik(const Design& design, const ParamLayout& layout,
                        const Eigen::VectorXd& params, const Eigen::MatrixXd& draws,
                        SimDiagnostics* diag) {
    return loglik_impl(design, layout, params, draws, nullptr, diag, nullptr);
}

double simulated_loglik_grad(const Design& design, const ParamLayout& layout,
                             const Eigen::VectorXd& params, const Eigen::MatrixXd& draws,
                             Eigen::VectorXd& grad, SimDiagnostics* diag,
                             Eigen::MatrixXd* scores) {
    return loglik_impl(design, layout, params, draws, &grad, diag, scores);
}

} // namespace crashspat
