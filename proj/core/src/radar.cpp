#include "tacbench/radar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "tacbench/error.hpp"

namespace tacbench {
namespace {

struct AxisValue {
  double value = 0.0;
  bool nominal = false;
};

using Extractor = std::function<std::optional<AxisValue>(const EvalReport&)>;

struct AxisDef {
  const char* name;
  bool lower_is_better;
  Extractor extract;
};

std::optional<AxisValue> plain(std::optional<double> v) {
  if (!v) return std::nullopt;
  return AxisValue{*v, false};
}

/// Mean of the values present for the given groups.
template <class Map, class Get>
std::optional<double> group_mean(const Map& map, std::initializer_list<ChannelGroup> groups, Get get) {
  double sum = 0.0;
  std::size_t n = 0;
  for (auto g : groups) {
    const auto it = map.find(g);
    if (it == map.end()) continue;
    const std::optional<double> v = get(it->second);
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

constexpr std::initializer_list<ChannelGroup> kForce = {ChannelGroup::Fxy, ChannelGroup::Fz};
constexpr std::initializer_list<ChannelGroup> kPosition = {ChannelGroup::Pxy, ChannelGroup::Pz};

Extractor calib_mae(std::initializer_list<ChannelGroup> groups) {
  return [groups](const EvalReport& r) -> std::optional<AxisValue> {
    if (!r.sections.calibration) return std::nullopt;
    return plain(group_mean(r.sections.calibration->groups, groups,
                            [](const RegressionScores& s) { return std::optional<double>(s.mae); }));
  };
}

Extractor rep_mean(std::initializer_list<ChannelGroup> groups) {
  return [groups](const EvalReport& r) -> std::optional<AxisValue> {
    if (!r.sections.repeatability) return std::nullopt;
    return plain(group_mean(r.sections.repeatability->groups, groups,
                            [](const RepeatabilityResult& v) { return std::optional<double>(v.rep); }));
  };
}

Extractor spatial_mean(std::initializer_list<ChannelGroup> groups) {
  return [groups](const EvalReport& r) -> std::optional<AxisValue> {
    if (!r.sections.spatial) return std::nullopt;
    return plain(group_mean(r.sections.spatial->r_spatial, groups,
                            [](double v) { return std::optional<double>(v); }));
  };
}

Extractor light_mean(std::initializer_list<ChannelGroup> groups) {
  return [groups](const EvalReport& r) -> std::optional<AxisValue> {
    if (!r.sections.light) return std::nullopt;
    if (r.sections.light->excluded_opaque) return AxisValue{1.0, true};
    return plain(group_mean(r.sections.light->mean, groups,
                            [](const LightMean& m) { return m.r_light; }));
  };
}

std::vector<AxisDef> axis_defs(RadarTheme theme) {
  switch (theme) {
    case RadarTheme::Intrinsic:
      return {
          {"camera_resolution_mp", false,
           [](const EvalReport& r) { return plain(r.manifest.camera_resolution_mp); }},
          {"fov_mm2", false, [](const EvalReport& r) { return plain(r.manifest.fov_mm2); }},
          {"fps_hz", false, [](const EvalReport& r) { return plain(r.manifest.fps_hz); }},
          {"gel_thickness_mm", false,
           [](const EvalReport& r) { return plain(r.manifest.gel_thickness_mm); }},
          {"sensitivity_mm_per_n", false,
           [](const EvalReport& r) -> std::optional<AxisValue> {
             if (!r.sections.sensitivity) return std::nullopt;
             return plain(r.sections.sensitivity->mean_mu);
           }},
      };
    case RadarTheme::Standard:
      return {
          {"sr_0.05", false,
           [](const EvalReport& r) -> std::optional<AxisValue> {
             if (!r.sections.sr) return std::nullopt;
             const auto& c = *r.sections.sr;
             for (std::size_t i = 0; i < c.thresholds_mm.size(); ++i) {
               if (std::abs(c.thresholds_mm[i] - 0.05) < 1e-9) return AxisValue{c.accuracy[i], false};
             }
             return std::nullopt;
           }},
          {"force_mae", true, calib_mae(kForce)},
          {"position_mae", true, calib_mae(kPosition)},
          {"uniformity", false,
           [](const EvalReport& r) -> std::optional<AxisValue> {
             if (!r.sections.sensitivity) return std::nullopt;
             return plain(r.sections.sensitivity->uniformity_u);
           }},
      };
    case RadarTheme::Robustness:
      return {
          {"repeatability_force", true, rep_mean(kForce)},
          {"repeatability_position", true, rep_mean(kPosition)},
          {"spatial_force", true, spatial_mean(kForce)},
          {"spatial_position", true, spatial_mean(kPosition)},
          {"light_force", false, light_mean(kForce)},
          {"light_position", false, light_mean(kPosition)},
      };
  }
  return {};
}

}  // namespace

std::string_view to_string(RadarTheme theme) noexcept {
  switch (theme) {
    case RadarTheme::Intrinsic: return "intrinsic";
    case RadarTheme::Standard: return "standard";
    case RadarTheme::Robustness: return "robustness";
  }
  return "?";
}

std::optional<RadarTheme> parse_theme(std::string_view name) noexcept {
  for (auto t : kAllThemes) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

RadarAxes radar_axes(std::span<const EvalReport> reports, RadarTheme theme) {
  if (reports.size() < 2) {
    throw Error(ErrorKind::InsufficientSensors, "radar axes compare at least two sensors");
  }
  std::vector<const EvalReport*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const EvalReport* a, const EvalReport* b) {
    return a->manifest.sensor_name < b->manifest.sensor_name;
  });

  RadarAxes out;
  out.theme = theme;
  for (const auto* r : order) out.sensors.push_back({r->manifest.sensor_name, {}, {}, {}, {}});

  for (const auto& def : axis_defs(theme)) {
    std::vector<std::optional<AxisValue>> values;
    for (const auto* r : order) values.push_back(def.extract(*r));
    const auto present = std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
    if (present == 0) continue;
    if (static_cast<std::size_t>(present) != values.size()) {
      const auto missing = std::find_if(values.begin(), values.end(), [](const auto& v) { return !v; });
      throw Error(ErrorKind::MissingAxisValue,
                  "sensor " + order[static_cast<std::size_t>(missing - values.begin())]->manifest.sensor_name +
                      " has no value for axis " + def.name);
    }

    RadarAxis axis{def.name, def.lower_is_better, 0.0, 0.0};
    std::vector<double> oriented;
    for (const auto& v : values) oriented.push_back(def.lower_is_better ? -v->value : v->value);
    axis.oriented_min = *std::min_element(oriented.begin(), oriented.end());
    axis.oriented_max = *std::max_element(oriented.begin(), oriented.end());
    const double span = axis.oriented_max - axis.oriented_min;
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto& s = out.sensors[i];
      s.raw.push_back(values[i]->value);
      s.oriented.push_back(oriented[i]);
      s.normalized.push_back(span > 0.0 ? (oriented[i] - axis.oriented_min) / span : 1.0);
      s.nominal.push_back(values[i]->nominal);
    }
    out.axes.push_back(std::move(axis));
  }
  return out;
}

}  // namespace tacbench
