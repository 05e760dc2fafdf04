#include "synth/synth.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "ingest/kabco.hpp"

namespace crashspat {

namespace {

struct SlotIndices {
    std::vector<int> fixed;                // -1 marks the intercept
    std::vector<int> random;
    std::vector<std::vector<int>> shifter;

    explicit SlotIndices(const ModelSpec& spec) {
        for (const auto& v : fixed_slot_names(spec)) {
            fixed.push_back(v == intercept_name ? -1 : covariate_index(v));
        }
        for (const auto& v : random_slot_names(spec)) {
            random.push_back(v == intercept_name ? -1 : covariate_index(v));
        }
        for (const auto& names : shifter_slot_names(spec)) {
            std::vector<int> idxs;
            for (const auto& z : names) idxs.push_back(covariate_index(z));
            shifter.push_back(std::move(idxs));
        }
    }
};

double slot_value(const CrashRecord& rec, int idx) {
    return idx < 0 ? 1.0 : rec.covariate(static_cast<std::size_t>(idx));
}

void check_truth(const SynthTruth& truth) {
    truth.spec.validate();
    const auto fixed = fixed_slot_names(truth.spec);
    const auto random = random_slot_names(truth.spec);
    const auto shifters = shifter_slot_names(truth.spec);
    require(truth.beta_fixed.size() == static_cast<Eigen::Index>(fixed.size()),
            ErrorCode::InvalidArgument, "beta_fixed does not match the fixed slots");
    require(truth.beta_random.size() == static_cast<Eigen::Index>(random.size()),
            ErrorCode::InvalidArgument, "beta_random does not match the random slots");
    require(truth.eta.size() == shifters.size(), ErrorCode::InvalidArgument,
            "eta blocks do not match the random slots");
    for (std::size_t r = 0; r < shifters.size(); ++r) {
        require(truth.eta[r].size() == static_cast<Eigen::Index>(shifters[r].size()),
                ErrorCode::InvalidArgument, "eta block does not match its shifter list");
    }
    require(truth.gamma.rows() == static_cast<Eigen::Index>(random.size()) &&
                truth.gamma.cols() == truth.gamma.rows(),
            ErrorCode::InvalidArgument, "gamma does not match the random dimension");
    require(truth.u1 > 0.0, ErrorCode::InvalidArgument, "threshold must be positive");
    for (const auto& [name, p] : truth.covariate_probs) {
        require(covariate_index(name) >= 0, ErrorCode::InvalidArgument,
                "unknown covariate in generator: " + name);
        require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
                "covariate probability out of range: " + name);
    }
}

// Covariates, latent response, and KABCO label for one record. Draw order is
// fixed: covariates (name order), mixing draws, noise, then the severity
// refinement.
void fill_record(CrashRecord& rec, const SynthTruth& truth, const SlotIndices& slots,
                 Rng& rng) {
    rec.covariates.assign(covariate_count(), 0);
    for (const auto& [name, p] : truth.covariate_probs) {
        rec.covariates[static_cast<std::size_t>(covariate_index(name))] =
            rng.bernoulli(p) ? 1 : 0;
    }

    const Eigen::Index dims = truth.beta_random.size();
    double xb = 0.0;
    for (std::size_t k = 0; k < slots.fixed.size(); ++k) {
        xb += truth.beta_fixed[static_cast<Eigen::Index>(k)] * slot_value(rec, slots.fixed[k]);
    }
    Eigen::VectorXd omega(dims);
    for (Eigen::Index d = 0; d < dims; ++d) omega[d] = rng.normal();
    const Eigen::VectorXd mixed = truth.gamma * omega;
    for (std::size_t k = 0; k < slots.random.size(); ++k) {
        double coef = truth.beta_random[static_cast<Eigen::Index>(k)] +
                      mixed[static_cast<Eigen::Index>(k)];
        for (std::size_t s = 0; s < slots.shifter[k].size(); ++s) {
            coef += truth.eta[k][static_cast<Eigen::Index>(s)] *
                    slot_value(rec, slots.shifter[k][s]);
        }
        xb += coef * slot_value(rec, slots.random[k]);
    }

    const double latent = xb + rng.normal();
    if (latent <= 0.0) {
        rec.max_injury = KabcoLevel::O;
    } else if (latent <= truth.u1) {
        rec.max_injury = rng.bernoulli(0.5) ? KabcoLevel::B : KabcoLevel::C;
    } else {
        rec.max_injury = rng.bernoulli(0.3) ? KabcoLevel::K : KabcoLevel::A;
    }
}

} // namespace

SynthTruth default_truth() {
    SynthTruth t;
    t.spec.fixed_vars = {"rear_end", "dark", "speed_limit_ge50"};
    t.spec.random_vars = {"drunk_driving", "curve_road"};
    t.spec.mean_shifters = {{"drunk_driving", {"young_driver"}}};
    t.spec.correlated = true;
    t.spec.n_draws = 500;

    t.beta_fixed.resize(4); // const + three covariates
    t.beta_fixed << -0.3, 0.5, 0.35, -0.45;
    t.beta_random.resize(2);
    t.beta_random << 0.6, -0.5;
    t.eta = {Eigen::VectorXd(1), Eigen::VectorXd(0)};
    t.eta[0] << 0.7;
    t.gamma = Eigen::MatrixXd::Zero(2, 2);
    t.gamma(0, 0) = 0.8;
    t.gamma(1, 0) = 0.45;
    t.gamma(1, 1) = 0.6;
    t.u1 = 1.1;

    t.covariate_probs = {{"rear_end", 0.3},     {"dark", 0.3},        {"speed_limit_ge50", 0.4},
                         {"drunk_driving", 0.5}, {"curve_road", 0.5}, {"young_driver", 0.5}};
    return t;
}

Eigen::VectorXd pack_truth(const SynthTruth& truth) {
    check_truth(truth);
    const ParamLayout layout = layout_of(truth.spec);
    Eigen::VectorXd packed = Eigen::VectorXd::Zero(layout.total());
    packed.segment(layout.fixed_offset(), layout.n_fixed) = truth.beta_fixed;
    packed.segment(layout.random_offset(), layout.n_random) = truth.beta_random;
    int pos = layout.eta_offset();
    for (const auto& block : truth.eta) {
        packed.segment(pos, block.size()) = block;
        pos += static_cast<int>(block.size());
    }
    pos = layout.gamma_offset();
    if (layout.correlated) {
        for (int r = 0; r < layout.n_random; ++r) {
            for (int c = 0; c <= r; ++c) packed[pos++] = truth.gamma(r, c);
        }
    } else {
        for (int r = 0; r < layout.n_random; ++r) packed[pos++] = truth.gamma(r, r);
    }
    packed[layout.theta_offset()] = std::log(truth.u1);
    return packed;
}

SynthDataset generate_synthetic(const SynthTruth& truth, const SynthOptions& options) {
    check_truth(truth);
    require(options.grid_cells >= 4 * options.cluster_size, ErrorCode::InvalidArgument,
            "grid too small for four separated clusters");
    require(options.cluster_rate >= 0.0 && options.cluster_min >= 1, ErrorCode::InvalidArgument,
            "cluster intensity must be positive");

    SynthDataset out;
    out.truth = truth;
    out.grid.origin_lat = options.base_lat;
    out.grid.origin_lon = options.base_lon;
    out.grid.cell_size_km = options.cell_km;
    out.grid.n_rows = options.grid_cells;
    out.grid.n_cols = options.grid_cells;
    out.grid.ref_lat =
        options.base_lat + 0.5 * options.grid_cells * options.cell_km *
                               (180.0 / std::numbers::pi) / earth_radius_km;

    // Cluster blocks near the four grid corners.
    const int a1 = options.grid_cells / 5;
    const int a2 = options.grid_cells - a1 - options.cluster_size;
    require(a2 - (a1 + options.cluster_size) > 2 * options.moat, ErrorCode::InvalidArgument,
            "clusters and moats do not fit the grid");
    const std::pair<int, int> anchors[4] = {{a1, a1}, {a1, a2}, {a2, a1}, {a2, a2}};
    for (const auto& [ar, ac] : anchors) {
        std::vector<std::pair<int, int>> cells;
        for (int r = 0; r < options.cluster_size; ++r) {
            for (int c = 0; c < options.cluster_size; ++c) {
                cells.push_back({ar + r, ac + c});
            }
        }
        out.cluster_cells.push_back(std::move(cells));
    }

    // Background cells: everything farther than the moat from every cluster
    // cell (Chebyshev distance).
    auto near_cluster = [&](int r, int c) {
        for (const auto& cluster : out.cluster_cells) {
            for (const auto& [cr, cc] : cluster) {
                if (std::abs(r - cr) <= options.moat && std::abs(c - cc) <= options.moat) {
                    return true;
                }
            }
        }
        return false;
    };
    std::vector<std::pair<int, int>> background_cells;
    for (int r = 0; r < options.grid_cells; ++r) {
        for (int c = 0; c < options.grid_cells; ++c) {
            if (!near_cluster(r, c)) background_cells.push_back({r, c});
        }
    }

    Rng rng(options.seed);
    const SlotIndices slots(truth.spec);

    std::vector<std::pair<std::pair<int, int>, int>> cluster_counts;
    int total_cluster = 0;
    for (const auto& cluster : out.cluster_cells) {
        for (const auto& cell : cluster) {
            const int count = options.cluster_min + rng.poisson(options.cluster_rate);
            cluster_counts.push_back({cell, count});
            total_cluster += count;
        }
    }
    require(options.n_total >= total_cluster, ErrorCode::InvalidArgument,
            "n_total smaller than the planted cluster mass");
    const int n_background = options.n_total - total_cluster;

    auto emit_record = [&](int row, int col) {
        CrashRecord rec;
        rec.id = "r" + std::to_string(out.records.size() + 1);
        const double u = 0.05 + 0.9 * rng.uniform01();
        const double v = 0.05 + 0.9 * rng.uniform01();
        unproject_from_km(out.grid, (col + u) * options.cell_km, (row + v) * options.cell_km,
                          rec.lat, rec.lon);
        fill_record(rec, truth, slots, rng);
        out.records.push_back(std::move(rec));
    };

    for (const auto& [cell, count] : cluster_counts) {
        for (int i = 0; i < count; ++i) emit_record(cell.first, cell.second);
    }
    for (int i = 0; i < n_background; ++i) {
        const auto& cell =
            background_cells[rng.uniform_index(background_cells.size())];
        emit_record(cell.first, cell.second);
    }
    return out;
}

std::vector<CrashRecord> generate_probit_records(const SynthTruth& truth, std::size_t n,
                                                 std::uint64_t seed) {
    check_truth(truth);
    Rng rng(seed);
    const SlotIndices slots(truth.spec);
    std::vector<CrashRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CrashRecord rec;
        rec.id = "r" + std::to_string(i + 1);
        rec.lat = 40.0 + 0.2 * rng.uniform01();
        rec.lon = -78.0 + 0.2 * rng.uniform01();
        fill_record(rec, truth, slots, rng);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace crashspat
