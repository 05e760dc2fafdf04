#pragma once

#include <string>
#include <string_view>

namespace crashspat {

// Police-reported injury scale, ordered from fatal (K) to no injury (O).
enum class KabcoLevel { K, A, B, C, O };

// Ordinal response: 0 = no injury, 1 = minor injury, 2 = serious injury.
using SeverityClass = int;

// Case-insensitive single-letter token; anything else throws Parse.
KabcoLevel parse_kabco(std::string_view token);

char kabco_char(KabcoLevel k);

// O->0, B/C->1, K/A->2.
SeverityClass severity_class(KabcoLevel k);

// Fatality-equivalents per crash at each level.
double equivalent_fatality(KabcoLevel k);

} // namespace crashspat
