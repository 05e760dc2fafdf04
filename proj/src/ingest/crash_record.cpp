#include "ingest/crash_record.hpp"

namespace crashspat {

const std::vector<std::string>& covariate_names() {
    static const std::vector<std::string> names = {
        "rear_end",
        "angle",
        "head_on",
        "sideswipe",
        "hit_fixed_object",
        "hit_pedestrian",
        "hit_bicycle",
        "state_road",
        "local_road",
        "curve_road",
        "speed_limit_ge50",
        "unsignalized_intersection",
        "signalized_intersection",
        "snow",
        "work_zone",
        "dark",
        "light",
        "rural",
        "older_driver",
        "young_driver",
        "drunk_driving",
        "exceeding_speed_limit",
        "fatigued",
        "drug_related",
        "running_stop_sign",
        "running_red_light",
        "unbelted",
        "large_truck",
        "overturn",
    };
    return names;
}

std::size_t covariate_count() { return covariate_names().size(); }

int covariate_index(std::string_view name) {
    const auto& names = covariate_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

} // namespace crashspat
