#include "tacbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "json_io.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

constexpr std::array<std::string_view, 12> kLeadingColumns{
    "sample_id", "point_id", "trial_id", "depth_step", "px_mm", "py_mm",
    "pz_mm",     "fx_n",     "fy_n",     "fz_n",       "intensity", "scene_id"};

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw Error(ErrorKind::InvalidValue,
                std::string("manifest field ") + name + " must be strictly positive");
  }
}

bool all_finite(const ProbeSample& s) {
  for (double v : s.label) {
    if (!std::isfinite(v)) return false;
  }
  if (!std::isfinite(s.intensity)) return false;
  return std::all_of(s.features.begin(), s.features.end(),
                     [](double v) { return std::isfinite(v); });
}

std::string id_text(std::uint64_t id) { return "sample " + std::to_string(id); }

}  // namespace

// ---------------------------------------------------------------- manifest

void SensorManifest::validate() const {
  if (sensor_name.empty()) throw Error(ErrorKind::InvalidValue, "manifest sensor_name is empty");
  require_positive(camera_resolution_mp, "camera_resolution_mp");
  require_positive(gel_thickness_mm, "gel_thickness_mm");
  require_positive(fov_mm2, "fov_mm2");
  require_positive(fps_hz, "fps_hz");
  require_positive(max_depth_mm, "max_depth_mm");
  require_positive(max_force_n, "max_force_n");
  require_positive(max_radius_mm, "max_radius_mm");
  require_positive(depth_step_mm, "depth_step_mm");
  // The surface center is a coordinate and may sit at or below the origin.
  if (!std::isfinite(center_x_mm) || !std::isfinite(center_y_mm)) {
    throw Error(ErrorKind::InvalidValue, "manifest center must be finite");
  }
}

bool SensorManifest::supports(ChannelGroup group) const noexcept {
  return channels_supported.empty() ||
         std::find(channels_supported.begin(), channels_supported.end(), group) !=
             channels_supported.end();
}

namespace detail {

double require_number(const Json& json, const char* key) {
  const auto it = json.find(key);
  if (it == json.end() || !it->is_number()) {
    throw Error(ErrorKind::SchemaError, std::string("missing numeric key '") + key + "'");
  }
  return it->get<double>();
}

std::string require_string(const Json& json, const char* key) {
  const auto it = json.find(key);
  if (it == json.end() || !it->is_string()) {
    throw Error(ErrorKind::SchemaError, std::string("missing string key '") + key + "'");
  }
  return it->get<std::string>();
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

Json manifest_to_json(const SensorManifest& m) {
  Json j;
  j["sensor_name"] = m.sensor_name;
  j["camera_resolution_mp"] = m.camera_resolution_mp;
  j["gel_thickness_mm"] = m.gel_thickness_mm;
  j["fov_mm2"] = m.fov_mm2;
  j["fps_hz"] = m.fps_hz;
  j["max_depth_mm"] = m.max_depth_mm;
  j["max_force_n"] = m.max_force_n;
  j["center_x_mm"] = m.center_x_mm;
  j["center_y_mm"] = m.center_y_mm;
  j["max_radius_mm"] = m.max_radius_mm;
  j["opaque"] = m.opaque;
  if (!m.channels_supported.empty()) {
    Json groups = Json::array();
    for (auto g : m.channels_supported) groups.push_back(std::string(to_string(g)));
    j["channels_supported"] = groups;
  }
  if (!m.depth_distribution.empty()) j["depth_distribution"] = m.depth_distribution;
  j["depth_step_mm"] = m.depth_step_mm;
  return j;
}

SensorManifest manifest_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "manifest must be a JSON object");
  SensorManifest m;
  m.sensor_name = require_string(j, "sensor_name");
  m.camera_resolution_mp = require_number(j, "camera_resolution_mp");
  m.gel_thickness_mm = require_number(j, "gel_thickness_mm");
  m.fov_mm2 = require_number(j, "fov_mm2");
  m.fps_hz = require_number(j, "fps_hz");
  m.max_depth_mm = require_number(j, "max_depth_mm");
  m.max_force_n = require_number(j, "max_force_n");
  m.center_x_mm = require_number(j, "center_x_mm");
  m.center_y_mm = require_number(j, "center_y_mm");
  m.max_radius_mm = require_number(j, "max_radius_mm");
  if (auto it = j.find("opaque"); it != j.end()) {
    if (!it->is_boolean()) throw Error(ErrorKind::SchemaError, "'opaque' must be a boolean");
    m.opaque = it->get<bool>();
  }
  if (auto it = j.find("channels_supported"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorKind::SchemaError, "'channels_supported' must be an array");
    for (const auto& entry : *it) {
      const auto group = entry.is_string() ? parse_group(entry.get<std::string>()) : std::nullopt;
      if (!group) throw Error(ErrorKind::SchemaError, "unknown channel group in channels_supported");
      m.channels_supported.push_back(*group);
    }
  }
  if (auto it = j.find("depth_distribution"); it != j.end() && it->is_string()) {
    m.depth_distribution = it->get<std::string>();
  }
  if (j.contains("depth_step_mm")) m.depth_step_mm = require_number(j, "depth_step_mm");
  m.validate();
  return m;
}

}  // namespace detail

SensorManifest manifest_from_json_text(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("manifest is not valid JSON: ") + e.what());
  }
  return detail::manifest_from_json(j);
}

std::string manifest_to_json_text(const SensorManifest& manifest) {
  return detail::dump(detail::manifest_to_json(manifest));
}

SensorManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json_text(detail::read_text(path));
}

void save_manifest(const SensorManifest& manifest, const std::filesystem::path& path) {
  detail::write_text(path, manifest_to_json_text(manifest));
}

// ---------------------------------------------------------------- dataset

SensorDataset SensorDataset::build(SensorManifest manifest, std::vector<ProbeSample> rows,
                                   const LoadOptions& options) {
  manifest.validate();
  SensorDataset ds;
  ds.manifest_ = std::move(manifest);
  const auto& m = ds.manifest_;

  if (!rows.empty()) {
    ds.feature_dim_ = rows.front().features.size();
    ds.image_paths_ = ds.feature_dim_ == 0 && !rows.front().image_path.empty();
  }

  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> trial_keys;
  auto reject = [&](ErrorKind kind, const ProbeSample& s, std::string message) {
    if (options.strict) throw Error(kind, id_text(s.sample_id) + ": " + message);
    ds.issues_.push_back({kind, s.sample_id, std::move(message)});
  };

  ds.samples_.reserve(rows.size());
  for (auto& row : rows) {
    if (row.features.size() != ds.feature_dim_) {
      throw Error(ErrorKind::SchemaError, id_text(row.sample_id) + " has " +
                                              std::to_string(row.features.size()) +
                                              " features, expected " +
                                              std::to_string(ds.feature_dim_));
    }
    if (!all_finite(row)) {
      reject(ErrorKind::InvalidValue, row, "non-finite value");
      continue;
    }
    const double pz = row.value(Channel::Pz);
    const double fz = row.value(Channel::Fz);
    if (pz < 0.0) {
      reject(ErrorKind::InvalidValue, row, "negative indentation depth");
      continue;
    }
    if (pz > m.max_depth_mm) {
      reject(ErrorKind::SafeLimitViolation, row,
             "Pz " + detail::format_double(pz) + " mm exceeds max_depth " +
                 detail::format_double(m.max_depth_mm) + " mm");
      continue;
    }
    if (std::abs(fz) > m.max_force_n) {
      reject(ErrorKind::SafeLimitViolation, row,
             "|Fz| " + detail::format_double(std::abs(fz)) + " N exceeds max_force " +
                 detail::format_double(m.max_force_n) + " N");
      continue;
    }
    if (row.intensity < 0.0 || row.intensity > 255.0) {
      reject(ErrorKind::InvalidValue, row, "intensity outside [0, 255]");
      continue;
    }
    if (ds.index_.contains(row.sample_id)) {
      reject(ErrorKind::DuplicateSampleId, row, "sample_id appears more than once");
      continue;
    }
    if (!trial_keys.emplace(row.point_id, row.depth_step, row.trial_id).second) {
      reject(ErrorKind::DuplicateTrialKey, row,
             "(point_id, depth_step, trial_id) appears more than once");
      continue;
    }
    ds.index_.emplace(row.sample_id, ds.samples_.size());
    ds.samples_.push_back(std::move(row));
  }
  return ds;
}

const ProbeSample* SensorDataset::find(std::uint64_t sample_id) const noexcept {
  const auto it = index_.find(sample_id);
  return it == index_.end() ? nullptr : &samples_[it->second];
}

const ProbeSample& SensorDataset::at(std::uint64_t sample_id) const {
  const auto* s = find(sample_id);
  if (s == nullptr) throw Error(ErrorKind::UnknownSampleId, id_text(sample_id) + " not in dataset");
  return *s;
}

std::vector<std::uint64_t> SensorDataset::ids() const {
  std::vector<std::uint64_t> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.sample_id);
  return out;
}

std::vector<ProbeSample> SensorDataset::subset(std::span<const std::uint64_t> ids) const {
  std::vector<ProbeSample> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(at(id));
  return out;
}

void SensorDataset::require_valid() const {
  if (!issues_.empty()) {
    const auto& first = issues_.front();
    throw Error(first.kind, id_text(first.sample_id) + ": " + first.message);
  }
}

// ---------------------------------------------------------------- samples.csv

std::span<const std::string_view> sample_table_columns() noexcept { return kLeadingColumns; }

std::vector<ProbeSample> parse_sample_table(std::string_view csv_text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv_text.size()) {
    auto end = csv_text.find('\n', start);
    if (end == std::string_view::npos) end = csv_text.size();
    auto line = detail::trim(csv_text.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorKind::SchemaError, "sample table is empty (no header)");

  const auto header = detail::split_fields(lines.front());
  for (std::size_t i = 0; i < kLeadingColumns.size(); ++i) {
    if (detail::column_index(header, kLeadingColumns[i]) < 0) {
      throw Error(ErrorKind::MissingColumn,
                  "sample table lacks column '" + std::string(kLeadingColumns[i]) + "'");
    }
    if (header[i] != kLeadingColumns[i]) {
      throw Error(ErrorKind::SchemaError, "column " + std::to_string(i) + " must be '" +
                                              std::string(kLeadingColumns[i]) + "'");
    }
  }
  const std::size_t extra = header.size() - kLeadingColumns.size();
  const bool image_mode = extra == 1 && header.back() == "image_path";
  if (!image_mode) {
    for (std::size_t f = 0; f < extra; ++f) {
      if (header[kLeadingColumns.size() + f] != "feature_" + std::to_string(f)) {
        throw Error(ErrorKind::SchemaError,
                    "expected column 'feature_" + std::to_string(f) + "' or a single image_path");
      }
    }
  }

  std::vector<ProbeSample> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = detail::split_fields(lines[li]);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::SchemaError, "line " + std::to_string(li + 1) + " has " +
                                              std::to_string(fields.size()) + " fields, expected " +
                                              std::to_string(header.size()));
    }
    ProbeSample s;
    s.sample_id = detail::parse_uint(fields[0], "sample_id");
    s.point_id = detail::parse_int(fields[1], "point_id");
    s.trial_id = detail::parse_int(fields[2], "trial_id");
    s.depth_step = detail::parse_int(fields[3], "depth_step");
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      s.label[c] = detail::parse_double(fields[4 + c], kLeadingColumns[4 + c]);
    }
    s.intensity = detail::parse_double(fields[10], "intensity");
    s.scene_id = std::string(fields[11]);
    if (image_mode) {
      s.image_path = std::string(fields[12]);
    } else {
      s.features.reserve(extra);
      for (std::size_t f = 0; f < extra; ++f) {
        s.features.push_back(detail::parse_double(fields[12 + f], "feature"));
      }
    }
    rows.push_back(std::move(s));
  }
  return rows;
}

std::string format_sample_table(std::span<const ProbeSample> samples) {
  const std::size_t dim = samples.empty() ? 0 : samples.front().features.size();
  const bool image_mode = dim == 0 && !samples.empty() && !samples.front().image_path.empty();

  std::string out;
  out.reserve(samples.size() * (96 + dim * 20));
  for (std::size_t i = 0; i < kLeadingColumns.size(); ++i) {
    if (i) out += ',';
    out += kLeadingColumns[i];
  }
  if (image_mode) {
    out += ",image_path";
  } else {
    for (std::size_t f = 0; f < dim; ++f) out += ",feature_" + std::to_string(f);
  }
  out += '\n';

  for (const auto& s : samples) {
    out += std::to_string(s.sample_id);
    out += ',' + std::to_string(s.point_id);
    out += ',' + std::to_string(s.trial_id);
    out += ',' + std::to_string(s.depth_step);
    for (double v : s.label) out += ',' + detail::format_double(v);
    out += ',' + detail::format_double(s.intensity);
    out += ',' + s.scene_id;
    if (image_mode) {
      out += ',' + s.image_path;
    } else {
      for (double v : s.features) out += ',' + detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

SensorDataset load_dataset(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& samples_path, const LoadOptions& options) {
  auto manifest = load_manifest(manifest_path);
  auto rows = parse_sample_table(detail::read_text(samples_path));
  return SensorDataset::build(std::move(manifest), std::move(rows), options);
}

void save_dataset(const SensorDataset& dataset, const std::filesystem::path& manifest_path,
                  const std::filesystem::path& samples_path) {
  save_manifest(dataset.manifest(), manifest_path);
  detail::write_text(samples_path, format_sample_table(dataset.samples()));
}

// ---------------------------------------------------------------- geometry

double radial_distance(const ProbeSample& sample, const SensorManifest& manifest,
                       ClampCounter* clamps) {
  const double dx = sample.value(Channel::Px) - manifest.center_x_mm;
  const double dy = sample.value(Channel::Py) - manifest.center_y_mm;
  const double r = std::hypot(dx, dy) / manifest.max_radius_mm;
  if (r > 1.0) {
    if (clamps) ++clamps->count;
    return 1.0;
  }
  return r;
}

double normalized_depth(const ProbeSample& sample, const SensorManifest& manifest,
                        ClampCounter* clamps) {
  const double d = sample.value(Channel::Pz) / manifest.max_depth_mm;
  if (d < 0.0 || d > 1.0) {
    if (clamps) ++clamps->count;
    return std::clamp(d, 0.0, 1.0);
  }
  return d;
}

}  // namespace tacbench
