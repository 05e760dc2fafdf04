#include "spatial/gstar.hpp"

#include <cmath>

#include "core/error.hpp"

namespace crashspat {

const char* hotspot_category_name(HotspotCategory c) {
    switch (c) {
        case HotspotCategory::Cold99: return "cold_99";
        case HotspotCategory::Cold95: return "cold_95";
        case HotspotCategory::Cold90: return "cold_90";
        case HotspotCategory::NotSignificant: return "not_significant";
        case HotspotCategory::Hot90: return "hot_90";
        case HotspotCategory::Hot95: return "hot_95";
        case HotspotCategory::Hot99: return "hot_99";
    }
    throw_error(ErrorCode::Internal, "unreachable hotspot category");
}

std::vector<double> getis_ord_gstar(const std::vector<double>& x, const SpatialWeights& w) {
    require(x.size() == w.n, ErrorCode::InvalidArgument,
            "attribute vector length does not match weights");
    require(x.size() >= 2, ErrorCode::DegenerateInput, "need at least two cells");

    const double n = static_cast<double>(x.size());
    double sum_x = 0.0;
    double sum_x2 = 0.0;
    for (double v : x) {
        sum_x += v;
        sum_x2 += v * v;
    }
    const double mean = sum_x / n;
    const double variance = sum_x2 / n - mean * mean;
    require(variance > 0.0, ErrorCode::DegenerateInput, "constant attribute vector");
    const double s = std::sqrt(variance);

    std::vector<double> z(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        // Binary self-inclusive row: weight sum and squared-weight sum agree.
        const double sum_w = static_cast<double>(w.neighbors[i].size()) + 1.0;
        double sum_wx = x[i];
        for (std::uint32_t j : w.neighbors[i]) sum_wx += x[j];

        const double spread = n * sum_w - sum_w * sum_w;
        if (spread <= 0.0) {
            // Neighborhood covers all cells; numerator is identically zero.
            z[i] = 0.0;
            continue;
        }
        z[i] = (sum_wx - mean * sum_w) / (s * std::sqrt(spread / (n - 1.0)));
    }
    return z;
}

HotspotCategory classify_hotspot(double z) {
    const double a = std::abs(z);
    int magnitude = 0;
    if (a >= 2.576) {
        magnitude = 3;
    } else if (a >= 1.960) {
        magnitude = 2;
    } else if (a >= 1.645) {
        magnitude = 1;
    }
    if (z < 0.0) magnitude = -magnitude;
    return static_cast<HotspotCategory>(magnitude);
}

std::vector<HotspotCategory> classify_hotspots(const std::vector<double>& z) {
    std::vector<HotspotCategory> out;
    out.reserve(z.size());
    for (double v : z) out.push_back(classify_hotspot(v));
    return out;
}

} // namespace crashspat
