#include "tacbench/emit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json_io.hpp"
#include "tacbench/error.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

constexpr double kRadarRadius = 100.0;
constexpr double kRadarPitch = 260.0;

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << (std::abs(v) < 5e-4 ? 0.0 : v);
  return s.str();
}

}  // namespace

std::optional<EmitFormat> parse_emit_format(std::string_view name) noexcept {
  if (name == "json") return EmitFormat::Json;
  if (name == "csv") return EmitFormat::Csv;
  if (name == "svg") return EmitFormat::Svg;
  return std::nullopt;
}

std::string radar_to_csv(std::span<const RadarAxes> themes) {
  std::ostringstream out;
  out << "sensor,theme,axis,raw_value,oriented_value,normalized_value\n";
  for (const auto& t : themes) {
    for (const auto& s : t.sensors) {
      for (std::size_t a = 0; a < t.axes.size(); ++a) {
        out << s.sensor_name << ',' << to_string(t.theme) << ',' << t.axes[a].name << ','
            << detail::format_double(s.raw[a]) << ',' << detail::format_double(s.oriented[a]) << ','
            << detail::format_double(s.normalized[a]) << '\n';
      }
    }
  }
  return out.str();
}

std::string radar_to_json_text(std::span<const RadarAxes> themes) {
  detail::Json j = detail::Json::array();
  for (const auto& t : themes) {
    detail::Json theme;
    theme["theme"] = std::string(to_string(t.theme));
    theme["normalization"] = "min-max across sensors; lower-is-better axes negated first";
    detail::Json axes = detail::Json::array();
    for (const auto& a : t.axes) {
      axes.push_back({{"name", a.name},
                      {"lower_is_better", a.lower_is_better},
                      {"oriented_min", a.oriented_min},
                      {"oriented_max", a.oriented_max}});
    }
    theme["axes"] = std::move(axes);
    detail::Json sensors = detail::Json::array();
    for (const auto& s : t.sensors) {
      sensors.push_back({{"sensor", s.sensor_name},
                         {"raw", s.raw},
                         {"oriented", s.oriented},
                         {"normalized", s.normalized},
                         {"nominal", s.nominal}});
    }
    theme["sensors"] = std::move(sensors);
    j.push_back(std::move(theme));
  }
  return detail::dump(j);
}

std::string radar_svg(std::span<const RadarAxes> themes) {
  const double width = kRadarPitch * static_cast<double>(std::max<std::size_t>(1, themes.size()));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\""
      << fixed(kRadarPitch) << "\">\n";
  for (std::size_t t = 0; t < themes.size(); ++t) {
    const auto& theme = themes[t];
    const double cx = kRadarPitch * (static_cast<double>(t) + 0.5);
    const double cy = kRadarPitch / 2.0;
    const std::size_t n = theme.axes.size();
    const auto angle = [n](std::size_t a) {
      return -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(n);
    };
    out << "  <g class=\"radar\" data-theme=\"" << to_string(theme.theme) << "\">\n";
    for (std::size_t a = 0; a < n; ++a) {
      const double x = cx + kRadarRadius * std::cos(angle(a));
      const double y = cy + kRadarRadius * std::sin(angle(a));
      out << "    <line class=\"axis\" x1=\"" << fixed(cx) << "\" y1=\"" << fixed(cy) << "\" x2=\""
          << fixed(x) << "\" y2=\"" << fixed(y) << "\" stroke=\"#999\"/>\n";
      out << "    <text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" font-size=\"9\">"
          << xml_escape(theme.axes[a].name) << (theme.axes[a].lower_is_better ? " (inv)" : "")
          << "</text>\n";
    }
    for (const auto& s : theme.sensors) {
      std::string nominal;
      for (std::size_t a = 0; a < n; ++a) {
        if (!s.nominal[a]) continue;
        if (!nominal.empty()) nominal += ',';
        nominal += theme.axes[a].name;
      }
      out << "    <polygon data-sensor=\"" << xml_escape(s.sensor_name) << "\"";
      if (!nominal.empty()) out << " data-nominal-axes=\"" << xml_escape(nominal) << "\"";
      out << " fill=\"none\" stroke=\"#333\" points=\"";
      for (std::size_t a = 0; a < n; ++a) {
        const double r = kRadarRadius * s.normalized[a];
        if (a > 0) out << ' ';
        out << fixed(cx + r * std::cos(angle(a))) << ',' << fixed(cy + r * std::sin(angle(a)));
      }
      out << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string heatmap_svg(const SensitivityMap& map) {
  constexpr double kPixels = 20.0;
  const double side = kPixels * static_cast<double>(map.bins_per_axis);
  double lo = 0.0;
  double hi = 0.0;
  if (!map.bins.empty()) {
    const auto [mn, mx] = std::minmax_element(map.bins.begin(), map.bins.end(),
                                              [](const auto& a, const auto& b) { return a.mean_s < b.mean_s; });
    lo = mn->mean_s;
    hi = mx->mean_s;
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(side) << "\" height=\""
      << fixed(side) << "\" data-cell-mm=\"" << detail::format_double(map.cell_mm) << "\">\n";
  for (const auto& b : map.bins) {
    const double t = hi > lo ? (b.mean_s - lo) / (hi - lo) : 1.0;
    const int level = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    // SVG y grows downward; row 0 is the lowest y.
    const double y = side - kPixels * static_cast<double>(b.iy + 1);
    out << "  <rect x=\"" << fixed(kPixels * static_cast<double>(b.ix)) << "\" y=\"" << fixed(y)
        << "\" width=\"" << fixed(kPixels) << "\" height=\"" << fixed(kPixels) << "\" fill=\"rgb("
        << level << ',' << level << ',' << level << ")\" data-mean-s=\""
        << detail::format_double(b.mean_s) << "\" data-count=\"" << b.count << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit(const EvalReport& report, EmitFormat format, const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::Json: detail::write_text(path, report_to_json_text(report)); return;
    case EmitFormat::Csv: detail::write_text(path, report_to_csv(report)); return;
    case EmitFormat::Svg: break;
  }
  throw Error(ErrorKind::InvalidArgument, "a report has no SVG form; emit the radar or heatmap");
}

void emit(std::span<const RadarAxes> themes, EmitFormat format, const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::Json: detail::write_text(path, radar_to_json_text(themes)); return;
    case EmitFormat::Csv: detail::write_text(path, radar_to_csv(themes)); return;
    case EmitFormat::Svg: detail::write_text(path, radar_svg(themes)); return;
  }
}

void emit(const SensitivityMap& map, EmitFormat format, const std::filesystem::path& path) {
  switch (format) {
    case EmitFormat::Csv: detail::write_text(path, format_heatmap(map)); return;
    case EmitFormat::Svg: detail::write_text(path, heatmap_svg(map)); return;
    case EmitFormat::Json: break;
  }
  throw Error(ErrorKind::InvalidArgument, "sensitivity maps are emitted as CSV or SVG");
}

}  // namespace tacbench
