#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacbench/report.hpp"

namespace tacbench {

enum class RadarTheme : std::uint8_t { Intrinsic, Standard, Robustness };
inline constexpr RadarTheme kAllThemes[] = {RadarTheme::Intrinsic, RadarTheme::Standard,
                                            RadarTheme::Robustness};
std::string_view to_string(RadarTheme theme) noexcept;
std::optional<RadarTheme> parse_theme(std::string_view name) noexcept;

struct RadarAxis {
  std::string name;
  bool lower_is_better = false;
  double oriented_min = 0.0;
  double oriented_max = 0.0;

  bool operator==(const RadarAxis&) const = default;
};

struct RadarSensor {
  std::string sensor_name;
  std::vector<double> raw;
  std::vector<double> oriented;    ///< -raw on lower-is-better axes
  std::vector<double> normalized;  ///< min-max over sensors, in [0, 1]
  std::vector<bool> nominal;       ///< value is a placeholder (opaque sensor lighting)

  bool operator==(const RadarSensor&) const = default;
};

/// Per-axis min-max normalized scores of one theme; sensors sorted by name.
/// When every sensor has the same value on an axis, all score 1.
struct RadarAxes {
  RadarTheme theme = RadarTheme::Intrinsic;
  std::vector<RadarAxis> axes;
  std::vector<RadarSensor> sensors;

  bool operator==(const RadarAxes&) const = default;
};

/// Axes that no report can supply are left out. Throws InsufficientSensors
/// (fewer than two reports) or MissingAxisValue (an axis only some reports supply).
RadarAxes radar_axes(std::span<const EvalReport> reports, RadarTheme theme);

}  // namespace tacbench
