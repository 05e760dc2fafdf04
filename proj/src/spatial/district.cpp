#include "spatial/district.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace crashspat {

DistrictExtraction extract_districts(const RasterResult& raster, const SpatialWeights& w,
                                     const std::vector<HotspotCategory>& labels, int k,
                                     int min_cells, HotspotCategory level) {
    require(k >= 1, ErrorCode::InvalidArgument, "district count must be at least 1");
    require(labels.size() == raster.cells.size() && w.n == raster.cells.size(),
            ErrorCode::InvalidArgument, "labels/weights do not match the cell list");
    require(static_cast<int>(level) >= 1, ErrorCode::InvalidArgument,
            "qualifying level must be a hot category");

    const std::size_t n = raster.cells.size();
    std::vector<bool> qualifies(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        qualifies[i] = static_cast<int>(labels[i]) >= static_cast<int>(level);
    }

    // Connected components over qualifying cells only.
    std::vector<int> component(n, -1);
    int n_components = 0;
    std::vector<std::size_t> stack;
    for (std::size_t seed_cell = 0; seed_cell < n; ++seed_cell) {
        if (!qualifies[seed_cell] || component[seed_cell] >= 0) continue;
        const int comp_id = n_components++;
        stack.push_back(seed_cell);
        component[seed_cell] = comp_id;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::uint32_t j : w.neighbors[i]) {
                if (qualifies[j] && component[j] < 0) {
                    component[j] = comp_id;
                    stack.push_back(j);
                }
            }
        }
    }

    std::vector<District> components(n_components);
    for (std::size_t i = 0; i < n; ++i) {
        if (component[i] >= 0) components[component[i]].cell_indices.push_back(i);
    }
    std::vector<int> crash_counts(n_components, 0);
    for (int c = 0; c < n_components; ++c) {
        for (std::size_t i : components[c].cell_indices) {
            crash_counts[c] += raster.cells[i].crash_count;
            components[c].record_indices.insert(components[c].record_indices.end(),
                                                raster.members[i].begin(),
                                                raster.members[i].end());
        }
        std::sort(components[c].record_indices.begin(), components[c].record_indices.end());
    }

    std::vector<int> order;
    for (int c = 0; c < n_components; ++c) {
        if (static_cast<int>(components[c].cell_indices.size()) >= min_cells) order.push_back(c);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (crash_counts[a] != crash_counts[b]) return crash_counts[a] > crash_counts[b];
        return components[a].cell_indices.front() < components[b].cell_indices.front();
    });

    DistrictExtraction out;
    const int kept = std::min<int>(k, static_cast<int>(order.size()));
    for (int rank = 0; rank < kept; ++rank) {
        District d = std::move(components[order[rank]]);
        d.district_id = rank + 1;
        out.districts.push_back(std::move(d));
    }
    if (kept < k) {
        out.warning = "requested " + std::to_string(k) + " districts but only " +
                      std::to_string(kept) + " connected components qualify";
    }
    return out;
}

} // namespace crashspat
