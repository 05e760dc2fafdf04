#include "raster/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "core/error.hpp"
#include "ingest/kabco.hpp"

namespace crashspat {

namespace {

constexpr double deg2rad = std::numbers::pi / 180.0;

void check_spec(const GridSpec& spec) {
    require(spec.cell_size_km > 0.0, ErrorCode::InvalidArgument, "cell size must be positive");
    require(spec.n_rows > 0 && spec.n_cols > 0, ErrorCode::InvalidArgument,
            "grid must have at least one row and column");
}

} // namespace

void project_to_km(const GridSpec& spec, double lat, double lon, double& x_km, double& y_km) {
    x_km = earth_radius_km * (lon - spec.origin_lon) * deg2rad * std::cos(spec.ref_lat * deg2rad);
    y_km = earth_radius_km * (lat - spec.origin_lat) * deg2rad;
}

void unproject_from_km(const GridSpec& spec, double x_km, double y_km, double& lat, double& lon) {
    lat = spec.origin_lat + y_km / (earth_radius_km * deg2rad);
    lon = spec.origin_lon + x_km / (earth_radius_km * deg2rad * std::cos(spec.ref_lat * deg2rad));
}

bool cell_of(const GridSpec& spec, double lat, double lon, int& row, int& col) {
    double x_km = 0.0;
    double y_km = 0.0;
    project_to_km(spec, lat, lon, x_km, y_km);
    const double width = spec.n_cols * spec.cell_size_km;
    const double height = spec.n_rows * spec.cell_size_km;
    if (x_km < 0.0 || y_km < 0.0 || x_km > width || y_km > height) return false;
    // Upper extent edges close the last cell so every in-extent point lands.
    col = std::min(static_cast<int>(x_km / spec.cell_size_km), spec.n_cols - 1);
    row = std::min(static_cast<int>(y_km / spec.cell_size_km), spec.n_rows - 1);
    return true;
}

GridSpec fit_grid(const std::vector<CrashRecord>& records, double cell_size_km) {
    require(cell_size_km > 0.0, ErrorCode::InvalidArgument, "cell size must be positive");
    GridSpec spec;
    spec.cell_size_km = cell_size_km;
    if (records.empty()) {
        spec.n_rows = spec.n_cols = 1;
        return spec;
    }
    double min_lat = records.front().lat;
    double max_lat = records.front().lat;
    double min_lon = records.front().lon;
    double max_lon = records.front().lon;
    for (const auto& rec : records) {
        min_lat = std::min(min_lat, rec.lat);
        max_lat = std::max(max_lat, rec.lat);
        min_lon = std::min(min_lon, rec.lon);
        max_lon = std::max(max_lon, rec.lon);
    }
    spec.origin_lat = min_lat;
    spec.origin_lon = min_lon;
    spec.ref_lat = 0.5 * (min_lat + max_lat);

    double x_km = 0.0;
    double y_km = 0.0;
    project_to_km(spec, max_lat, max_lon, x_km, y_km);
    spec.n_cols = std::max(1, static_cast<int>(std::ceil(x_km / cell_size_km)));
    spec.n_rows = std::max(1, static_cast<int>(std::ceil(y_km / cell_size_km)));
    return spec;
}

RasterResult rasterize(const std::vector<CrashRecord>& records, const GridSpec& spec) {
    check_spec(spec);

    RasterResult out;
    out.spec = spec;

    std::map<std::pair<int, int>, std::vector<std::size_t>> bins;
    for (std::size_t i = 0; i < records.size(); ++i) {
        int row = 0;
        int col = 0;
        if (cell_of(spec, records[i].lat, records[i].lon, row, col)) {
            bins[{row, col}].push_back(i);
        } else {
            out.out_of_extent.push_back(i);
        }
    }

    out.cells.reserve(bins.size());
    out.members.reserve(bins.size());
    for (auto& [key, idxs] : bins) {
        RasterCell cell;
        cell.row = key.first;
        cell.col = key.second;
        cell.crash_count = static_cast<int>(idxs.size());
        for (std::size_t i : idxs) cell.attribute += equivalent_fatality(records[i].max_injury);
        out.cells.push_back(cell);
        out.members.push_back(std::move(idxs));
    }
    return out;
}

} // namespace crashspat
