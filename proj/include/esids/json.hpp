#pragma once

#include <json.hpp>

namespace esids {

// Ordered maps keep serialized artifacts stable across runs.
using Json = nlohmann::ordered_json;

}  // namespace esids
