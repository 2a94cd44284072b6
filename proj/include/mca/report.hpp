#pragma once

#include <string>

#include "json.hpp"
#include "mca/mca.hpp"

namespace mca {

using Json = nlohmann::ordered_json;

Json to_json(const AssumptionReport& report);

/// UTC timestamp, e.g. "2026-08-10T12:00:00Z". The one report field excluded
/// from determinism comparisons.
std::string iso8601_utc_now();

}  // namespace mca
