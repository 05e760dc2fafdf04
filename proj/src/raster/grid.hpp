#pragma once

#include <cstddef>
#include <vector>

#include "ingest/crash_record.hpp"

namespace crashspat {

// Mean Earth radius in kilometers.
inline constexpr double earth_radius_km = 6371.0088;

// Rectangular grid over a lat/lon extent. Points are projected onto a local
// equirectangular plane (longitude scaled by cos of ref_lat) before binning,
// so cells are near-square in kilometers at study-area scale.
struct GridSpec {
    double origin_lat = 0.0; // lower-left corner
    double origin_lon = 0.0;
    double ref_lat = 0.0;    // latitude used for the longitude scale factor
    double cell_size_km = 1.364;
    int n_rows = 0;
    int n_cols = 0;
};

struct RasterCell {
    int row = 0;
    int col = 0;
    int crash_count = 0;
    double attribute = 0.0; // fatality-equivalents summed over member crashes
};

struct RasterResult {
    GridSpec spec;
    // Retained cells (crash_count > 0) in ascending (row, col) order.
    std::vector<RasterCell> cells;
    // Record indices per retained cell, aligned with `cells`.
    std::vector<std::vector<std::size_t>> members;
    // Indices of records falling outside the grid extent.
    std::vector<std::size_t> out_of_extent;
};

// Projects a point to kilometers relative to the grid origin.
void project_to_km(const GridSpec& spec, double lat, double lon, double& x_km, double& y_km);

// Inverse of project_to_km, for polygon export.
void unproject_from_km(const GridSpec& spec, double x_km, double y_km, double& lat, double& lon);

// Cell index of a point, or false when outside the extent. Cells are
// half-open [lower, upper); points exactly on the top/right extent edge
// fall into the last row/col.
bool cell_of(const GridSpec& spec, double lat, double lon, int& row, int& col);

// Smallest grid of the given cell size covering every record, with ref_lat at
// the extent's mid-latitude. Degenerate extents still get one cell.
GridSpec fit_grid(const std::vector<CrashRecord>& records, double cell_size_km);

// Bins records into cells and drops empty cells from the output. Total
// retained crash count plus out-of-extent count equals the input size.
RasterResult rasterize(const std::vector<CrashRecord>& records, const GridSpec& spec);

} // namespace crashspat
