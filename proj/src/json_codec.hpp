#pragma once

// Internal JSON codecs for the canonical snapshot format. nlohmann::json
// keeps object keys sorted, which the canonical form relies on.

#include <json.hpp>

#include "dspace/errors.hpp"
#include "dspace/model.hpp"

namespace dspace::codec {

using nlohmann::json;

json condition_to_json(const Condition& c);
Condition condition_from_json(const json& j);

json rule_to_json(const Rule& r);
Rule rule_from_json(const json& j);

json state_to_json(const DataSpaceState& s);
DataSpaceState state_from_json(const json& j);

}  // namespace dspace::codec
