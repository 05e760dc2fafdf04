#pragma once

#include <json.hpp>

#include "ingest/ingest.hpp"
#include "probit/estimate.hpp"
#include "raster/grid.hpp"
#include "synth/synth.hpp"

namespace crashspat {

// Key-ordered JSON keeps every report byte-stable.
using ojson = nlohmann::ordered_json;

ojson grid_to_json(const GridSpec& spec);
GridSpec grid_from_json(const nlohmann::json& j);

ojson model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

ojson ingest_report_to_json(const IngestReport& report);

ojson estimation_to_json(const EstimationResult& result);

// The slice of a persisted fit needed to evaluate it elsewhere: spec,
// packed estimates, parameter count, converged log-likelihood.
struct StoredFit {
    ModelSpec spec;
    Eigen::VectorXd estimates;
    int k = 0;
    double ll = 0.0;
};
StoredFit stored_fit_from_json(const nlohmann::json& j);

ojson truth_to_json(const SynthTruth& truth);

} // namespace crashspat
