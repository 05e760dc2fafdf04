#include "raster/weights.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "core/error.hpp"

namespace crashspat {

SpatialWeights queen_weights(const std::vector<RasterCell>& cells) {
    std::map<std::pair<int, int>, std::uint32_t> index_of;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto [it, inserted] = index_of.insert({{cells[i].row, cells[i].col}, static_cast<std::uint32_t>(i)});
        (void)it;
        require(inserted, ErrorCode::InvalidArgument,
                "duplicate cell (" + std::to_string(cells[i].row) + ", " +
                    std::to_string(cells[i].col) + ")");
    }

    SpatialWeights w;
    w.n = cells.size();
    w.neighbors.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                auto it = index_of.find({cells[i].row + dr, cells[i].col + dc});
                if (it != index_of.end()) w.neighbors[i].push_back(it->second);
            }
        }
        std::sort(w.neighbors[i].begin(), w.neighbors[i].end());
    }
    return w;
}

} // namespace crashspat
