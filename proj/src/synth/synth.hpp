#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "probit/model_spec.hpp"
#include "raster/grid.hpp"

namespace crashspat {

// Generating parameters for synthetic responses. Coefficient vectors align
// with the slot orders implied by `spec` (fixed_slot_names /
// random_slot_names / shifter_slot_names).
struct SynthTruth {
    ModelSpec spec;
    Eigen::VectorXd beta_fixed;
    Eigen::VectorXd beta_random;
    std::vector<Eigen::VectorXd> eta; // per random slot
    Eigen::MatrixXd gamma;            // lower triangular
    double u1 = 1.0;
    // Bernoulli rate per covariate the generator toggles; covariates not
    // listed stay 0.
    std::map<std::string, double> covariate_probs;
};

// Canonical recovery model: three fixed covariates, two correlated random
// covariates, one mean shifter on the first random coefficient.
SynthTruth default_truth();

// The packed parameter vector an estimator of truth.spec would produce.
Eigen::VectorXd pack_truth(const SynthTruth& truth);

struct SynthOptions {
    std::uint64_t seed = 42;
    // Total record count; cluster cells are filled first, the remainder
    // scatters over eligible background cells.
    int n_total = 5000;
    int grid_cells = 40;        // square grid side, in cells
    int cluster_size = 3;       // cluster block side, in cells
    int moat = 3;               // empty ring around each cluster, in cells
    double cluster_rate = 18.0; // Poisson rate per cluster cell
    int cluster_min = 4;        // guaranteed crashes per cluster cell
    double cell_km = 1.364;
    double base_lat = 40.5;
    double base_lon = -78.0;
};

struct SynthDataset {
    std::vector<CrashRecord> records;
    GridSpec grid; // the generator's own binning, for aligned analysis
    // Planted membership per cluster, ascending (row, col).
    std::vector<std::vector<std::pair<int, int>>> cluster_cells;
    SynthTruth truth;
};

// Four high-intensity cell blocks near the grid corners, separated from the
// scattered background by empty moats, with covariates and severities drawn
// from the truth model. Deterministic per seed.
SynthDataset generate_synthetic(const SynthTruth& truth, const SynthOptions& options);

// Model-only records (no spatial structure): covariates, coefficients, and
// ordinal responses from the truth model at a fixed location box.
std::vector<CrashRecord> generate_probit_records(const SynthTruth& truth, std::size_t n,
                                                 std::uint64_t seed);

} // namespace crashspat
