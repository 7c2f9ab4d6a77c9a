#pragma once

// Internal nlohmann adapters shared by the library sources.  Public headers
// stay string-based; only .cpp files include this.

#include "json.hpp"
#include "qdc/circuit.hpp"
#include "qdc/equivalence.hpp"

namespace qdc::detail {

nlohmann::json circuit_json(const Circuit& c);
Circuit circuit_from(const nlohmann::json& j);
nlohmann::json report_json(const EquivalenceReport& r);

}  // namespace qdc::detail
