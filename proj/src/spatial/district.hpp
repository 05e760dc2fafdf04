#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "raster/grid.hpp"
#include "raster/weights.hpp"
#include "spatial/gstar.hpp"

namespace crashspat {

struct District {
    int district_id = 0;                       // 1-based rank by crash count
    std::vector<std::size_t> cell_indices;     // into the retained-cell list
    std::vector<std::size_t> record_indices;   // crashes inside member cells
};

struct DistrictExtraction {
    std::vector<District> districts;
    std::string warning; // non-empty when fewer than k components qualify
};

// Groups hot cells (at or above `level`) into queen-connected components,
// keeps components with at least `min_cells` cells, ranks them by member
// crash count (ties broken by lowest cell index), and returns the top k.
// Districts never share cells; record lists come from the raster binning.
DistrictExtraction extract_districts(const RasterResult& raster, const SpatialWeights& w,
                                     const std::vector<HotspotCategory>& labels, int k,
                                     int min_cells = 3,
                                     HotspotCategory level = HotspotCategory::Hot90);

} // namespace crashspat
