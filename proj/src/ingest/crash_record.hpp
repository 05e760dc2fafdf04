#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ingest/kabco.hpp"

namespace crashspat {

// Canonical covariate schema: crash type, roadway, environment, driver and
// vehicle indicators. Order is fixed; record vectors align with it.
const std::vector<std::string>& covariate_names();

std::size_t covariate_count();

// Position of `name` in the schema, or -1 when unknown.
int covariate_index(std::string_view name);

struct CrashRecord {
    std::string id;
    double lat = 0.0;
    double lon = 0.0;
    KabcoLevel max_injury = KabcoLevel::O;
    // One 0/1 entry per schema covariate, schema order.
    std::vector<std::uint8_t> covariates;

    double covariate(std::size_t index) const { return covariates[index]; }
};

} // namespace crashspat
