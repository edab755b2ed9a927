#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace sgraph {

// std::map-backed, so object keys serialize in sorted order.
using Json = nlohmann::json;

// Compact single-line dump with %.17g float formatting: byte-stable
// across runs for identical inputs. Throws std::invalid_argument on
// non-finite numbers or binary values.
std::string dump_canonical(const Json& j);

}  // namespace sgraph
