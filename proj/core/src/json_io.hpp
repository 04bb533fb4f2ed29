#pragma once

// nlohmann/json conversions for library types. Kept out of the public headers.

#include <json.hpp>

#include "tacbench/dataset.hpp"

namespace tacbench::detail {

using Json = nlohmann::ordered_json;

Json manifest_to_json(const SensorManifest& manifest);
SensorManifest manifest_from_json(const Json& json);

/// Typed field access with SchemaError on absence or wrong type.
double require_number(const Json& json, const char* key);
std::string require_string(const Json& json, const char* key);

/// Pretty JSON text, newline terminated.
std::string dump(const Json& json);

}  // namespace tacbench::detail

#include "tacbench/normalization.hpp"

namespace tacbench::detail {

Json norm_to_json(const NormParams& params);
NormParams norm_from_json(const Json& json);

}  // namespace tacbench::detail
