#pragma once

#include <string>

#include <json.hpp>

namespace hfinsler::cli {

using Json = nlohmann::ordered_json;

/// Decimal with 17 significant digits (round-trip exact for doubles).
std::string format_double(double value);

/// Serializes with every floating-point number printed by format_double.
/// Arrays of scalars stay on one line; objects are indented by two spaces.
std::string dump_json(const Json& doc);

}  // namespace hfinsler::cli
