#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "reference_tables.hpp"
#include "tacbench/error.hpp"
#include "tacbench/config.hpp"
#include "tacbench/emit.hpp"
#include "tacbench/radar.hpp"
#include "tacbench/report.hpp"
#include "temp_dir.hpp"

namespace tb = tacbench;

namespace {

std::vector<tb::EvalReport> radar_reports() {
  return {reference::report_fixture("ViTacTip"), reference::report_fixture("GelSight"),
          reference::report_fixture("MagicTac")};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, DefaultsRoundTripAndUnknownKeys) {
  tb::EvalConfig c;
  c.seed = 17;
  c.sr_thresholds_mm = {0.0, 0.05};
  EXPECT_EQ(tb::config_from_json_text(tb::config_to_json_text(c)), c);
  EXPECT_EQ(tb::config_from_json_text("{}"), tb::EvalConfig{});
  EXPECT_THROW((void)tb::config_from_json_text(R"({"windw": 3})"), tb::Error);
  tb::EvalConfig bad;
  bad.smoothing_window = 4;
  EXPECT_THROW(bad.validate(), tb::Error);
  EXPECT_EQ(tb::EvalConfig{}.thresholds().size(), 31u);
}

TEST(Report, JsonRoundTripKeepsSections) {
  auto r = reference::report_fixture("MagicTac");
  auto text = tb::report_to_json_text(r);
  auto back = tb::report_from_json_text(text);
  EXPECT_EQ(back.manifest, r.manifest);
  EXPECT_EQ(back.config, r.config);
  EXPECT_EQ(back.sections.calibration, r.sections.calibration);
  EXPECT_EQ(back.sections.sr, r.sections.sr);
  EXPECT_EQ(back.sections.light, r.sections.light);
  EXPECT_FALSE(back.sections.sensitivity.has_value());
  EXPECT_EQ(tb::report_to_json_text(back), text);
}

TEST(Report, MissingCalibrationAndVersionMismatch) {
  EXPECT_THROW((void)tb::assemble_report(reference::manifest_for("MagicTac"), {}, {}), tb::Error);
  auto text = tb::report_to_json_text(reference::report_fixture("MagicTac"));
  auto pos = text.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 12, "\"version\": 2");
  try {
    (void)tb::report_from_json_text(text);
    FAIL();
  } catch (const tb::Error& e) {
    EXPECT_EQ(e.kind(), tb::ErrorKind::SchemaVersionMismatch);
  }
}

TEST(Report, MergeSectionsOverlays) {
  tb::ReportSections a, b;
  a.sr = tb::SRCurve{{0.05}, {0.5}, 2};
  b.sr = tb::SRCurve{{0.05}, {1.0}, 2};
  b.light = tb::opaque_light_report();
  tb::merge_sections(a, b);
  EXPECT_EQ(a.sr->accuracy[0], 1.0);
  EXPECT_TRUE(a.light.has_value());
}

TEST(Report, CsvListsEveryGroup) {
  auto csv = tb::report_to_csv(reference::report_fixture("ViTacTip"));
  EXPECT_EQ(csv.rfind("section,key,value", 0), 0u);
  for (const char* g : {"Fxy", "Fz", "Pxy", "Pz"}) EXPECT_NE(csv.find(g), std::string::npos);
}

TEST(Radar, NormalizationAndOrientation) {
  auto reports = radar_reports();
  auto axes = tb::radar_axes(reports, tb::RadarTheme::Robustness);
  ASSERT_EQ(axes.sensors.size(), 3u);
  EXPECT_EQ(axes.sensors[0].sensor_name, "GelSight");
  std::size_t rep_force = axes.axes.size();
  for (std::size_t i = 0; i < axes.axes.size(); ++i) {
    if (axes.axes[i].name == "repeatability_force") rep_force = i;
  }
  ASSERT_LT(rep_force, axes.axes.size());
  EXPECT_TRUE(axes.axes[rep_force].lower_is_better);
  for (const auto& s : axes.sensors) {
    for (double v : s.normalized) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    if (s.sensor_name == "ViTacTip") EXPECT_EQ(s.normalized[rep_force], 1.0);
  }
}

TEST(Radar, StandardThemeSkipsAbsentSensitivity) {
  auto reports = radar_reports();
  auto axes = tb::radar_axes(reports, tb::RadarTheme::Standard);
  for (const auto& a : axes.axes) EXPECT_NE(a.name, "uniformity");
  auto intrinsic = tb::radar_axes(reports, tb::RadarTheme::Intrinsic);
  EXPECT_EQ(intrinsic.axes.size(), 4u);
}

TEST(Radar, NeedsTwoSensorsAndConsistentAxes) {
  auto reports = radar_reports();
  std::span<const tb::EvalReport> one(reports.data(), 1);
  EXPECT_THROW((void)tb::radar_axes(one, tb::RadarTheme::Standard), tb::Error);
  reports[1].sections.sr.reset();
  try {
    (void)tb::radar_axes(reports, tb::RadarTheme::Standard);
    FAIL();
  } catch (const tb::Error& e) {
    EXPECT_EQ(e.kind(), tb::ErrorKind::MissingAxisValue);
  }
}

TEST(Emit, RadarSvgHasPolygonPerSensorPerTheme) {
  auto reports = radar_reports();
  std::vector<tb::RadarAxes> themes;
  for (auto t : tb::kAllThemes) themes.push_back(tb::radar_axes(reports, t));
  auto svg = tb::radar_svg(themes);
  EXPECT_EQ(count(svg, "<polygon"), 9u);
  EXPECT_EQ(count(svg, "class=\"radar\""), 3u);
  EXPECT_NE(svg.find("data-nominal-axes"), std::string::npos);
  auto csv = tb::radar_to_csv(themes);
  EXPECT_EQ(csv.rfind("sensor,theme,axis,raw_value,oriented_value,normalized_value", 0), 0u);
}

TEST(Emit, FormatsAndUnsupportedCombinations) {
  testing_support::TempDir dir("emit");
  auto report = reference::report_fixture("GelSight");
  tb::emit(report, tb::EmitFormat::Json, dir / "r.json");
  tb::emit(report, tb::EmitFormat::Csv, dir / "r.csv");
  EXPECT_EQ(tb::load_report(dir / "r.json").manifest.sensor_name, "GelSight");
  EXPECT_FALSE(slurp(dir / "r.csv").empty());
  EXPECT_THROW(tb::emit(report, tb::EmitFormat::Svg, dir / "r.svg"), tb::Error);
  EXPECT_EQ(*tb::parse_emit_format("svg"), tb::EmitFormat::Svg);
  EXPECT_FALSE(tb::parse_emit_format("png").has_value());
}
