#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ingest/crash_record.hpp"

namespace crashspat {

// Name used for the constant term in variable lists and reports.
inline constexpr const char* intercept_name = "const";

// Which covariates enter the model and in what role. The constant term is
// always present; include_random_intercept moves it into the random set.
// Mean shifters let listed covariates shift a random coefficient's mean.
struct ModelSpec {
    std::vector<std::string> fixed_vars;
    std::vector<std::string> random_vars;
    std::map<std::string, std::vector<std::string>> mean_shifters;
    bool correlated = false;
    int n_draws = 1000;
    int halton_skip = 10;
    bool include_random_intercept = false;

    // Throws Schema unless variable names are known, roles are disjoint, and
    // every mean-shifter key is a random variable or the intercept.
    void validate() const;
};

// Packed parameter vector layout:
//   [fixed betas | random means | eta blocks | gamma entries | theta]
// Gamma is stored row-major over the lower triangle when correlated, else
// one entry per diagonal element. The threshold is exp(theta).
struct ParamLayout {
    int n_fixed = 0;
    int n_random = 0;
    std::vector<int> shifter_counts; // per random var, layout order
    bool correlated = false;

    int eta_count() const;
    int gamma_count() const;
    int total() const;

    int fixed_offset() const { return 0; }
    int random_offset() const { return n_fixed; }
    int eta_offset() const { return n_fixed + n_random; }
    int gamma_offset() const { return eta_offset() + eta_count(); }
    int theta_offset() const { return gamma_offset() + gamma_count(); }

    // Lower-triangular gamma matrix from the packed segment.
    Eigen::MatrixXd unpack_gamma(const Eigen::VectorXd& params) const;
};

// Variable slot orders implied by a spec: the intercept leads whichever
// block it belongs to, then the listed variables in order.
std::vector<std::string> fixed_slot_names(const ModelSpec& spec);
std::vector<std::string> random_slot_names(const ModelSpec& spec);
std::vector<std::vector<std::string>> shifter_slot_names(const ModelSpec& spec);

// Parameter layout implied by a spec alone.
ParamLayout layout_of(const ModelSpec& spec);

// Deduplicated design: one row per distinct (response, covariate pattern),
// carrying its multiplicity. Identical observations contribute identical
// likelihood terms, so grouping them is exact and makes the reduction
// independent of input order.
struct Design {
    struct Row {
        double weight = 1.0;
        int y = 0;
        Eigen::VectorXd fixed;                 // intercept first when fixed
        Eigen::VectorXd random;                // intercept first when random
        std::vector<Eigen::VectorXd> shifters; // per random var
    };

    std::vector<Row> rows;
    std::size_t n_obs = 0;
    std::array<std::size_t, 3> class_counts{};
    std::vector<std::string> fixed_names;
    std::vector<std::string> random_names;
    std::vector<std::vector<std::string>> shifter_names;

    ParamLayout layout(const ModelSpec& spec) const;
    std::vector<std::string> param_names(const ModelSpec& spec) const;
};

// Builds the deduplicated design. With check_rank set it throws
// RankDeficient (naming columns) when the fixed+random design matrix is
// collinear; evaluation on foreign data passes false, since a transferred
// model may involve columns the data never varies.
Design build_design(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                    bool check_rank = true);

} // namespace crashspat
