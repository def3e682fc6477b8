#pragma once

#include <json.hpp>

#include <string>

namespace ppnear::detail {

/// Deterministic pretty printer: objects one key per line (keys sorted),
/// arrays of scalars kept on a single line. Ends with a newline.
std::string format_json(const nlohmann::json& j);

} // namespace ppnear::detail
