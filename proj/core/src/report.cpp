#include "tacbench/report.hpp"

#include <sstream>

#include "config_json.hpp"
#include "json_io.hpp"
#include "tacbench/error.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

using detail::Json;

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

ChannelGroup group_key(const std::string& name) {
  const auto g = parse_group(name);
  if (!g) throw Error(ErrorKind::SchemaError, "unknown channel group '" + name + "'");
  return *g;
}

Channel channel_key(const std::string& name) {
  const auto c = parse_channel(name);
  if (!c) throw Error(ErrorKind::SchemaError, "unknown channel '" + name + "'");
  return *c;
}

Json calibration_json(const CalibrationReport& r) {
  Json j;
  j["normalized"] = r.normalized;
  j["sample_count"] = r.sample_count;
  Json groups = Json::object();
  for (const auto& [g, s] : r.groups) {
    groups[std::string(to_string(g))] = {{"mae", s.mae}, {"r2", s.r2}, {"smape_pct", s.smape}};
  }
  j["groups"] = std::move(groups);
  return j;
}

CalibrationReport calibration_from(const Json& j) {
  CalibrationReport r;
  r.normalized = j.at("normalized").get<bool>();
  r.sample_count = j.at("sample_count").get<std::size_t>();
  for (const auto& [name, s] : j.at("groups").items()) {
    r.groups[group_key(name)] = {s.at("mae").get<double>(), s.at("r2").get<double>(),
                                 s.at("smape_pct").get<double>()};
  }
  return r;
}

Json sr_json(const SRCurve& c) {
  return {{"pair_count", c.pair_count}, {"thresholds_mm", c.thresholds_mm}, {"accuracy", c.accuracy}};
}

SRCurve sr_from(const Json& j) {
  SRCurve c;
  c.pair_count = j.at("pair_count").get<std::size_t>();
  c.thresholds_mm = j.at("thresholds_mm").get<std::vector<double>>();
  c.accuracy = j.at("accuracy").get<std::vector<double>>();
  if (c.thresholds_mm.size() != c.accuracy.size()) {
    throw Error(ErrorKind::SchemaError, "sr thresholds and accuracy differ in length");
  }
  return c;
}

Json sensitivity_json(const SensitivitySummary& s) {
  Json j;
  j["cell_mm"] = s.cell_mm;
  j["f_min_n"] = s.f_min_n;
  j["included_samples"] = s.included_samples;
  j["excluded_samples"] = s.excluded_samples;
  j["occupied_bins"] = s.occupied_bins;
  j["qualifying_bins"] = s.qualifying_bins;
  j["mean_mu"] = optional_number(s.mean_mu);
  j["std_sigma"] = optional_number(s.std_sigma);
  j["uniformity_u"] = optional_number(s.uniformity_u);
  return j;
}

SensitivitySummary sensitivity_from(const Json& j) {
  SensitivitySummary s;
  s.cell_mm = j.at("cell_mm").get<double>();
  s.f_min_n = j.at("f_min_n").get<double>();
  s.included_samples = j.at("included_samples").get<std::size_t>();
  s.excluded_samples = j.at("excluded_samples").get<std::size_t>();
  s.occupied_bins = j.at("occupied_bins").get<std::size_t>();
  s.qualifying_bins = j.at("qualifying_bins").get<std::size_t>();
  s.mean_mu = read_optional(j, "mean_mu");
  s.std_sigma = read_optional(j, "std_sigma");
  s.uniformity_u = read_optional(j, "uniformity_u");
  return s;
}

Json spatial_json(const SpatialSummary& s) {
  Json j;
  j["window"] = s.window;
  j["bin_width"] = s.bin_width;
  Json r = Json::object();
  for (const auto& [g, v] : s.r_spatial) r[std::string(to_string(g))] = v;
  j["r_spatial"] = std::move(r);
  return j;
}

SpatialSummary spatial_from(const Json& j) {
  SpatialSummary s;
  s.window = j.at("window").get<std::size_t>();
  s.bin_width = j.at("bin_width").get<double>();
  for (const auto& [name, v] : j.at("r_spatial").items()) s.r_spatial[group_key(name)] = v.get<double>();
  return s;
}

Json light_json(const LightReport& r) {
  Json j;
  j["excluded_opaque"] = r.excluded_opaque;
  j["nominal_score"] = r.excluded_opaque ? Json(1.0) : Json(nullptr);
  j["baseline_scene"] = r.baseline_scene;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json cells = Json::object();
    for (const auto& [g, c] : row.cells) {
      cells[std::string(to_string(g))] = {
          {"mae_baseline", c.mae_baseline},         {"mae_scene", c.mae_scene},
          {"intensity_baseline", c.intensity_baseline}, {"intensity_scene", c.intensity_scene},
          {"degradation_pct", c.degradation_pct},   {"r_light", optional_number(c.r_light)}};
    }
    rows.push_back({{"scene_id", row.scene_id}, {"cells", std::move(cells)}});
  }
  j["rows"] = std::move(rows);
  Json mean = Json::object();
  for (const auto& [g, m] : r.mean) {
    mean[std::string(to_string(g))] = {{"degradation_pct", m.degradation_pct},
                                       {"r_light", optional_number(m.r_light)}};
  }
  j["mean"] = std::move(mean);
  return j;
}

LightReport light_from(const Json& j) {
  LightReport r;
  r.excluded_opaque = j.at("excluded_opaque").get<bool>();
  r.baseline_scene = j.at("baseline_scene").get<std::string>();
  for (const auto& row_json : j.at("rows")) {
    LightRow row;
    row.scene_id = row_json.at("scene_id").get<std::string>();
    for (const auto& [name, c] : row_json.at("cells").items()) {
      LightCell cell;
      cell.mae_baseline = c.at("mae_baseline").get<double>();
      cell.mae_scene = c.at("mae_scene").get<double>();
      cell.intensity_baseline = c.at("intensity_baseline").get<double>();
      cell.intensity_scene = c.at("intensity_scene").get<double>();
      cell.degradation_pct = c.at("degradation_pct").get<double>();
      cell.r_light = read_optional(c, "r_light");
      row.cells[group_key(name)] = cell;
    }
    r.rows.push_back(std::move(row));
  }
  for (const auto& [name, m] : j.at("mean").items()) {
    r.mean[group_key(name)] = {m.at("degradation_pct").get<double>(), read_optional(m, "r_light")};
  }
  return r;
}

Json rep_result_json(const RepeatabilityResult& r) {
  Json curve = Json::array();
  for (const auto& [d, v] : r.depth_curve) curve.push_back(Json::array({d, v}));
  return {{"rep", r.rep},
          {"group_count", r.group_count},
          {"trials_per_group", r.trials_per_group},
          {"depth_curve", std::move(curve)}};
}

RepeatabilityResult rep_result_from(const Json& j) {
  RepeatabilityResult r;
  r.rep = j.at("rep").get<double>();
  r.group_count = j.at("group_count").get<std::size_t>();
  r.trials_per_group = j.at("trials_per_group").get<std::size_t>();
  for (const auto& point : j.at("depth_curve")) {
    r.depth_curve[point.at(0).get<std::int64_t>()] = point.at(1).get<double>();
  }
  return r;
}

Json repeatability_json(const RepeatabilityReport& r) {
  Json j;
  j["depth_step_mm"] = r.depth_step_mm;
  Json channels = Json::object();
  for (const auto& [c, v] : r.channels) channels[std::string(to_string(c))] = rep_result_json(v);
  j["channels"] = std::move(channels);
  Json groups = Json::object();
  for (const auto& [g, v] : r.groups) groups[std::string(to_string(g))] = rep_result_json(v);
  j["groups"] = std::move(groups);
  return j;
}

RepeatabilityReport repeatability_from(const Json& j) {
  RepeatabilityReport r;
  r.depth_step_mm = j.at("depth_step_mm").get<double>();
  for (const auto& [name, v] : j.at("channels").items()) r.channels[channel_key(name)] = rep_result_from(v);
  for (const auto& [name, v] : j.at("groups").items()) r.groups[group_key(name)] = rep_result_from(v);
  return r;
}

template <class T, class F>
Json section_or_null(const std::optional<T>& section, F&& to_json) {
  return section ? to_json(*section) : Json(nullptr);
}

template <class T, class F>
std::optional<T> read_section(const Json& sections, const char* key, F&& from_json) {
  const auto it = sections.find(key);
  if (it == sections.end() || it->is_null()) return std::nullopt;
  return from_json(*it);
}

}  // namespace

SensitivitySummary summarize(const SensitivityMap& map, double f_min) {
  SensitivitySummary s;
  s.cell_mm = map.cell_mm;
  s.f_min_n = f_min;
  s.included_samples = map.included_samples;
  s.excluded_samples = map.excluded_samples;
  s.occupied_bins = map.bins.size();
  s.qualifying_bins = map.qualifying_means().size();
  s.mean_mu = map.mean_mu;
  s.std_sigma = map.std_sigma;
  s.uniformity_u = map.uniformity_u;
  return s;
}

SpatialSummary summarize(const SpatialReport& report) {
  SpatialSummary s;
  s.window = report.window;
  s.bin_width = report.bin_width;
  for (const auto& [g, r] : report.groups) s.r_spatial[g] = r.r_spatial;
  return s;
}

EvalReport assemble_report(const SensorManifest& manifest, const EvalConfig& config,
                           ReportSections sections) {
  if (!sections.calibration) {
    throw Error(ErrorKind::MissingSection, "a report needs at least the calibration section");
  }
  return EvalReport{manifest, config, std::move(sections)};
}

void merge_sections(ReportSections& into, const ReportSections& from) {
  if (from.calibration) into.calibration = from.calibration;
  if (from.sr) into.sr = from.sr;
  if (from.sensitivity) into.sensitivity = from.sensitivity;
  if (from.spatial) into.spatial = from.spatial;
  if (from.light) into.light = from.light;
  if (from.repeatability) into.repeatability = from.repeatability;
}

std::string report_to_json_text(const EvalReport& report) {
  Json j;
  j["schema"] = std::string(kReportSchema);
  j["version"] = kReportVersion;
  j["manifest"] = detail::manifest_to_json(report.manifest);
  j["config"] = detail::config_to_json(report.config);
  const auto& s = report.sections;
  Json sections;
  sections["calibration"] = section_or_null(s.calibration, calibration_json);
  sections["sr"] = section_or_null(s.sr, sr_json);
  sections["sensitivity"] = section_or_null(s.sensitivity, sensitivity_json);
  sections["spatial"] = section_or_null(s.spatial, spatial_json);
  sections["light"] = section_or_null(s.light, light_json);
  sections["repeatability"] = section_or_null(s.repeatability, repeatability_json);
  j["sections"] = std::move(sections);
  return detail::dump(j);
}

EvalReport report_from_json_text(std::string_view text, bool require_calibration) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != kReportSchema) {
    throw Error(ErrorKind::SchemaError, "not a tacbench report");
  }
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kReportVersion) {
    throw Error(ErrorKind::SchemaVersionMismatch,
                "report version differs from " + std::to_string(kReportVersion));
  }
  EvalReport report;
  try {
    report.manifest = detail::manifest_from_json(j.at("manifest"));
    report.config = detail::config_from_json(j.at("config"));
    const auto& sections = j.at("sections");
    auto& s = report.sections;
    s.calibration = read_section<CalibrationReport>(sections, "calibration", calibration_from);
    s.sr = read_section<SRCurve>(sections, "sr", sr_from);
    s.sensitivity = read_section<SensitivitySummary>(sections, "sensitivity", sensitivity_from);
    s.spatial = read_section<SpatialSummary>(sections, "spatial", spatial_from);
    s.light = read_section<LightReport>(sections, "light", light_from);
    s.repeatability = read_section<RepeatabilityReport>(sections, "repeatability", repeatability_from);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("malformed report: ") + e.what());
  }
  if (require_calibration && !report.sections.calibration) {
    throw Error(ErrorKind::MissingSection, "report has no calibration section");
  }
  return report;
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  detail::write_text(path, report_to_json_text(report));
}

EvalReport load_report(const std::filesystem::path& path, bool require_calibration) {
  return report_from_json_text(detail::read_text(path), require_calibration);
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "section,key,value\n";
  const auto row = [&](std::string_view section, const std::string& key, const std::optional<double>& v) {
    out << section << ',' << key << ',' << (v ? detail::format_double(*v) : std::string("NA")) << '\n';
  };
  const auto& s = report.sections;
  if (s.calibration) {
    for (const auto& [g, r] : s.calibration->groups) {
      const std::string name(to_string(g));
      row("calibration", name + ".mae", r.mae);
      row("calibration", name + ".r2", r.r2);
      row("calibration", name + ".smape_pct", r.smape);
    }
  }
  if (s.sr) {
    for (std::size_t i = 0; i < s.sr->thresholds_mm.size(); ++i) {
      row("sr", "accuracy@" + detail::format_double(s.sr->thresholds_mm[i]), s.sr->accuracy[i]);
    }
  }
  if (s.sensitivity) {
    row("sensitivity", "mean_mu", s.sensitivity->mean_mu);
    row("sensitivity", "std_sigma", s.sensitivity->std_sigma);
    row("sensitivity", "uniformity_u", s.sensitivity->uniformity_u);
  }
  if (s.spatial) {
    for (const auto& [g, v] : s.spatial->r_spatial) row("spatial", std::string(to_string(g)), v);
  }
  if (s.light) {
    if (s.light->excluded_opaque) row("light", "nominal_score", 1.0);
    for (const auto& [g, m] : s.light->mean) {
      const std::string name(to_string(g));
      row("light", name + ".degradation_pct", m.degradation_pct);
      row("light", name + ".r_light", m.r_light);
    }
  }
  if (s.repeatability) {
    for (const auto& [c, r] : s.repeatability->channels) row("repeatability", std::string(to_string(c)), r.rep);
    for (const auto& [g, r] : s.repeatability->groups) row("repeatability", std::string(to_string(g)), r.rep);
  }
  return out.str();
}

}  // namespace tacbench
