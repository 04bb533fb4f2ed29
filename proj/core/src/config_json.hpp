#pragma once

#include "json_io.hpp"
#include "tacbench/config.hpp"

namespace tacbench::detail {

Json config_to_json(const EvalConfig& config);
EvalConfig config_from_json(const Json& json);

}  // namespace tacbench::detail
