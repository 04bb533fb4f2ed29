#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tacbench/radar.hpp"
#include "tacbench/report.hpp"
#include "tacbench/spatial.hpp"

namespace tacbench {

enum class EmitFormat : std::uint8_t { Json, Csv, Svg };
std::optional<EmitFormat> parse_emit_format(std::string_view name) noexcept;

/// radar.csv: sensor,theme,axis,raw_value,oriented_value,normalized_value
std::string radar_to_csv(std::span<const RadarAxes> themes);
std::string radar_to_json_text(std::span<const RadarAxes> themes);
/// One <g> per theme holding one <polygon> per sensor (a vertex per axis).
std::string radar_svg(std::span<const RadarAxes> themes);
/// One <rect> per occupied bin, gray level proportional to the bin mean.
std::string heatmap_svg(const SensitivityMap& map);

/// Writes the chosen serialization. Unsupported combinations throw
/// InvalidArgument; write failures throw IoError.
void emit(const EvalReport& report, EmitFormat format, const std::filesystem::path& path);
void emit(std::span<const RadarAxes> themes, EmitFormat format, const std::filesystem::path& path);
void emit(const SensitivityMap& map, EmitFormat format, const std::filesystem::path& path);

}  // namespace tacbench
