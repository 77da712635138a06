#pragma once

#include <string>

#include "json.hpp"

namespace sprrp::detail {

// Deterministic JSON text: object keys in lexicographic order, two-space
// indent, numbers through format_number, trailing newline.
std::string dump_json(const nlohmann::json& value);

}  // namespace sprrp::detail
