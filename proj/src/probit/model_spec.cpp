#include "probit/model_spec.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "ingest/kabco.hpp"

namespace crashspat {

namespace {

void check_known_covariate(const std::string& name) {
    require(covariate_index(name) >= 0, ErrorCode::Schema, "unknown covariate: " + name);
}

} // namespace

void ModelSpec::validate() const {
    require(n_draws >= 1, ErrorCode::Schema, "n_draws must be at least 1");
    require(halton_skip >= 0, ErrorCode::Schema, "halton_skip must be non-negative");

    std::set<std::string> fixed_set;
    for (const auto& name : fixed_vars) {
        check_known_covariate(name);
        require(fixed_set.insert(name).second, ErrorCode::Schema,
                "duplicate fixed variable: " + name);
    }
    std::set<std::string> random_set;
    for (const auto& name : random_vars) {
        check_known_covariate(name);
        require(random_set.insert(name).second, ErrorCode::Schema,
                "duplicate random variable: " + name);
        require(!fixed_set.count(name), ErrorCode::Schema,
                "variable in both fixed and random roles: " + name);
    }
    for (const auto& [key, shifters] : mean_shifters) {
        const bool key_ok =
            random_set.count(key) || (key == intercept_name && include_random_intercept);
        require(key_ok, ErrorCode::Schema,
                "mean shifter target is not a random variable: " + key);
        std::set<std::string> seen;
        for (const auto& name : shifters) {
            check_known_covariate(name);
            require(seen.insert(name).second, ErrorCode::Schema,
                    "duplicate mean shifter " + name + " for " + key);
        }
    }
}

int ParamLayout::eta_count() const {
    int total = 0;
    for (int c : shifter_counts) total += c;
    return total;
}

int ParamLayout::gamma_count() const {
    return correlated ? n_random * (n_random + 1) / 2 : n_random;
}

int ParamLayout::total() const { return n_fixed + n_random + eta_count() + gamma_count() + 1; }

Eigen::MatrixXd ParamLayout::unpack_gamma(const Eigen::VectorXd& params) const {
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n_random, n_random);
    int pos = gamma_offset();
    if (correlated) {
        for (int r = 0; r < n_random; ++r) {
            for (int c = 0; c <= r; ++c) gamma(r, c) = params[pos++];
        }
    } else {
        for (int r = 0; r < n_random; ++r) gamma(r, r) = params[pos++];
    }
    return gamma;
}

ParamLayout Design::layout(const ModelSpec& spec) const {
    ParamLayout out;
    out.n_fixed = static_cast<int>(fixed_names.size());
    out.n_random = static_cast<int>(random_names.size());
    out.correlated = spec.correlated;
    out.shifter_counts.reserve(shifter_names.size());
    for (const auto& names : shifter_names) {
        out.shifter_counts.push_back(static_cast<int>(names.size()));
    }
    return out;
}

std::vector<std::string> fixed_slot_names(const ModelSpec& spec) {
    std::vector<std::string> names;
    if (!spec.include_random_intercept) names.push_back(intercept_name);
    names.insert(names.end(), spec.fixed_vars.begin(), spec.fixed_vars.end());
    return names;
}

std::vector<std::string> random_slot_names(const ModelSpec& spec) {
    std::vector<std::string> names;
    if (spec.include_random_intercept) names.push_back(intercept_name);
    names.insert(names.end(), spec.random_vars.begin(), spec.random_vars.end());
    return names;
}

std::vector<std::vector<std::string>> shifter_slot_names(const ModelSpec& spec) {
    const std::vector<std::string> random_names = random_slot_names(spec);
    std::vector<std::vector<std::string>> out(random_names.size());
    for (std::size_t r = 0; r < random_names.size(); ++r) {
        auto it = spec.mean_shifters.find(random_names[r]);
        if (it != spec.mean_shifters.end()) out[r] = it->second;
    }
    return out;
}

ParamLayout layout_of(const ModelSpec& spec) {
    ParamLayout out;
    out.n_fixed = static_cast<int>(fixed_slot_names(spec).size());
    out.n_random = static_cast<int>(random_slot_names(spec).size());
    out.correlated = spec.correlated;
    for (const auto& names : shifter_slot_names(spec)) {
        out.shifter_counts.push_back(static_cast<int>(names.size()));
    }
    return out;
}

std::vector<std::string> Design::param_names(const ModelSpec& spec) const {
    std::vector<std::string> names;
    for (const auto& v : fixed_names) names.push_back("beta:" + v);
    for (const auto& v : random_names) names.push_back("mean:" + v);
    for (std::size_t r = 0; r < random_names.size(); ++r) {
        for (const auto& z : shifter_names[r]) {
            names.push_back("shift:" + random_names[r] + ":" + z);
        }
    }
    if (spec.correlated) {
        for (std::size_t r = 0; r < random_names.size(); ++r) {
            for (std::size_t c = 0; c <= r; ++c) {
                names.push_back("chol:" + random_names[r] + ":" + random_names[c]);
            }
        }
    } else {
        for (const auto& v : random_names) names.push_back("sd:" + v);
    }
    names.push_back("threshold_log");
    return names;
}

Design build_design(const std::vector<CrashRecord>& records, const ModelSpec& spec,
                    bool check_rank) {
    spec.validate();
    require(!records.empty(), ErrorCode::DegenerateInput, "no observations");

    Design design;
    design.n_obs = records.size();

    design.fixed_names = fixed_slot_names(spec);
    design.random_names = random_slot_names(spec);
    design.shifter_names = shifter_slot_names(spec);

    // Schema indices per slot; -1 marks the intercept column.
    std::vector<int> fixed_idx;
    std::vector<int> random_idx;
    std::vector<std::vector<int>> shifter_idx(design.shifter_names.size());
    for (const auto& v : design.fixed_names) {
        fixed_idx.push_back(v == intercept_name ? -1 : covariate_index(v));
    }
    for (const auto& v : design.random_names) {
        random_idx.push_back(v == intercept_name ? -1 : covariate_index(v));
    }
    for (std::size_t r = 0; r < design.shifter_names.size(); ++r) {
        for (const auto& z : design.shifter_names[r]) shifter_idx[r].push_back(covariate_index(z));
    }

    auto value_of = [](const CrashRecord& rec, int idx) {
        return idx < 0 ? 1.0 : rec.covariate(static_cast<std::size_t>(idx));
    };

    // Dedup key: response class + involved covariate cells, layout order.
    std::map<std::vector<int>, std::size_t> row_of_key;
    for (const auto& rec : records) {
        std::vector<int> key;
        key.reserve(1 + fixed_idx.size() + random_idx.size() + 8);
        const int y = severity_class(rec.max_injury);
        key.push_back(y);
        for (int idx : fixed_idx) key.push_back(static_cast<int>(value_of(rec, idx)));
        for (int idx : random_idx) key.push_back(static_cast<int>(value_of(rec, idx)));
        for (const auto& idxs : shifter_idx) {
            for (int idx : idxs) key.push_back(static_cast<int>(value_of(rec, idx)));
        }
        design.class_counts[static_cast<std::size_t>(y)] += 1;

        auto it = row_of_key.find(key);
        if (it != row_of_key.end()) {
            design.rows[it->second].weight += 1.0;
            continue;
        }
        Design::Row row;
        row.y = y;
        row.fixed.resize(static_cast<Eigen::Index>(fixed_idx.size()));
        for (std::size_t k = 0; k < fixed_idx.size(); ++k) {
            row.fixed[static_cast<Eigen::Index>(k)] = value_of(rec, fixed_idx[k]);
        }
        row.random.resize(static_cast<Eigen::Index>(random_idx.size()));
        for (std::size_t k = 0; k < random_idx.size(); ++k) {
            row.random[static_cast<Eigen::Index>(k)] = value_of(rec, random_idx[k]);
        }
        row.shifters.resize(shifter_idx.size());
        for (std::size_t r = 0; r < shifter_idx.size(); ++r) {
            row.shifters[r].resize(static_cast<Eigen::Index>(shifter_idx[r].size()));
            for (std::size_t k = 0; k < shifter_idx[r].size(); ++k) {
                row.shifters[r][static_cast<Eigen::Index>(k)] = value_of(rec, shifter_idx[r][k]);
            }
        }
        row_of_key.emplace(std::move(key), design.rows.size());
        design.rows.push_back(std::move(row));
    }

    // Canonical row order (sorted dedup keys): the reduction over rows is
    // then independent of input permutation, not just within tolerance.
    {
        std::vector<Design::Row> ordered;
        ordered.reserve(design.rows.size());
        for (const auto& [key, row_index] : row_of_key) {
            (void)key;
            ordered.push_back(std::move(design.rows[row_index]));
        }
        design.rows = std::move(ordered);
    }

    if (!check_rank) return design;

    // Collinearity check over unique rows of the fixed+random block.
    const Eigen::Index n_cols =
        static_cast<Eigen::Index>(design.fixed_names.size() + design.random_names.size());
    Eigen::MatrixXd block(static_cast<Eigen::Index>(design.rows.size()), n_cols);
    for (std::size_t i = 0; i < design.rows.size(); ++i) {
        for (Eigen::Index k = 0; k < design.rows[i].fixed.size(); ++k) {
            block(static_cast<Eigen::Index>(i), k) = design.rows[i].fixed[k];
        }
        for (Eigen::Index k = 0; k < design.rows[i].random.size(); ++k) {
            block(static_cast<Eigen::Index>(i), design.rows[i].fixed.size() + k) =
                design.rows[i].random[k];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(block);
    qr.setThreshold(1e-10);
    if (qr.rank() < n_cols) {
        std::vector<std::string> all_names = design.fixed_names;
        all_names.insert(all_names.end(), design.random_names.begin(),
                         design.random_names.end());
        const auto& perm = qr.colsPermutation().indices();
        std::string collinear;
        for (Eigen::Index k = qr.rank(); k < n_cols; ++k) {
            if (!collinear.empty()) collinear += ", ";
            collinear += all_names[static_cast<std::size_t>(perm[k])];
        }
        throw_error(ErrorCode::RankDeficient, "collinear design columns: " + collinear);
    }

    return design;
}

} // namespace crashspat
