#pragma once

#include <vector>

#include "raster/weights.hpp"

namespace crashspat {

// Ordered so that comparisons track the z score: deeper cold < not
// significant < hotter hot.
enum class HotspotCategory : int {
    Cold99 = -3,
    Cold95 = -2,
    Cold90 = -1,
    NotSignificant = 0,
    Hot90 = 1,
    Hot95 = 2,
    Hot99 = 3,
};

const char* hotspot_category_name(HotspotCategory c);

// Local clustering score per cell, self-inclusive weights (w_ii = 1 added
// here; the stored structure keeps a zero diagonal). Output is a z score.
// Degenerate when x is constant. Cells whose self-inclusive neighborhood is
// the whole study area carry no local information and score 0.
std::vector<double> getis_ord_gstar(const std::vector<double>& x, const SpatialWeights& w);

// Two-sided thresholds 2.576 / 1.960 / 1.645; sign picks hot vs cold.
HotspotCategory classify_hotspot(double z);

std::vector<HotspotCategory> classify_hotspots(const std::vector<double>& z);

} // namespace crashspat
