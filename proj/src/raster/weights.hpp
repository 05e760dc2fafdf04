#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "raster/grid.hpp"

namespace crashspat {

// Sparse binary adjacency over retained cells: symmetric, zero diagonal,
// at most 8 neighbors per cell (queen contiguity on grid indices).
struct SpatialWeights {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> neighbors; // sorted per cell

    // Number of ordered neighbor pairs, i.e. S0 for binary weights.
    std::size_t link_count() const {
        std::size_t total = 0;
        for (const auto& nb : neighbors) total += nb.size();
        return total;
    }
};

// Adjacency between retained cells whose (row, col) indices differ by at
// most 1 in each direction. Duplicate (row, col) pairs are an input error.
SpatialWeights queen_weights(const std::vector<RasterCell>& cells);

} // namespace crashspat
