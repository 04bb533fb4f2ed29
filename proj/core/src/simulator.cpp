#include "tacbench/simulator.hpp"

#include <cmath>
#include <numbers>

#include "json_io.hpp"
#include "tacbench/error.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

constexpr std::size_t kStateDims = 5;
constexpr double kGratingGain = 10.0;
constexpr double kYawAmplitude = 0.5;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidValue, "simspec: " + what);
}

std::string_view to_string(ForceLaw law) { return law == ForceLaw::Linear ? "linear" : "hertzian"; }

}  // namespace

void SimSensorSpec::validate() const {
  require(!sensor_name.empty(), "sensor_name is empty");
  require(camera_resolution_mp > 0 && gel_thickness_mm > 0 && fov_mm2 > 0 && fps_hz > 0,
          "intrinsic metrics must be positive");
  require(max_radius_mm > 0, "max_radius_mm must be positive");
  require(dome_radius_mm == 0 || dome_radius_mm >= max_radius_mm,
          "dome_radius_mm must be 0 or at least max_radius_mm");
  require(std::isfinite(center_x_mm) && std::isfinite(center_y_mm), "center must be finite");
  require(s0 > 0, "s0 must be positive");
  require(beta >= 0, "beta must be non-negative");
  require(shear_coupling >= 0 && max_lateral_offset_mm >= 0, "shear settings must be non-negative");
  require(feature_dim >= 3, "feature_dim must be at least 3");
  require(feature_noise >= 0 && trial_noise >= 0 && grating_noise >= 0 && grating_blur >= 0,
          "noise levels must be non-negative");
  require(edge_distortion >= 0 && edge_radius >= 0 && edge_radius <= 1, "edge settings out of range");
  require(max_depth_mm > 0 && max_force_n > 0, "safe limits must be positive");
  require(base_intensity >= 0, "base_intensity must be non-negative");
  const auto base = scene_gains.find(baseline_scene);
  require(base != scene_gains.end() && base->second == 1.0, "baseline scene must have gain 1");
  for (const auto& [id, gain] : scene_gains) {
    require(gain >= 0 && base_intensity * gain <= 255.0, "scene " + id + " intensity exceeds 255");
  }
  for (const auto& [id, factor] : scene_noise_factors) {
    require(scene_gains.contains(id), "noise factor for unknown scene " + id);
    require(factor >= 0, "noise factor must be non-negative");
  }
}

SimSensorSpec simspec_from_json_text(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("simspec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "simspec must be a JSON object");
  const auto known = detail::Json::parse(simspec_to_json_text(SimSensorSpec{}));
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw Error(ErrorKind::SchemaError, "unknown simspec key '" + item.key() + "'");
    }
  }

  SimSensorSpec s;
  try {
    const auto num = [&](const char* key, double& field) {
      if (auto it = j.find(key); it != j.end()) field = detail::require_number(j, key);
    };
    const auto boolean = [&](const char* key, bool& field) {
      if (auto it = j.find(key); it != j.end()) field = it->get<bool>();
    };
    if (j.contains("sensor_name")) s.sensor_name = detail::require_string(j, "sensor_name");
    num("camera_resolution_mp", s.camera_resolution_mp);
    num("gel_thickness_mm", s.gel_thickness_mm);
    num("fov_mm2", s.fov_mm2);
    num("fps_hz", s.fps_hz);
    boolean("opaque", s.opaque);
    num("dome_radius_mm", s.dome_radius_mm);
    num("center_x_mm", s.center_x_mm);
    num("center_y_mm", s.center_y_mm);
    num("max_radius_mm", s.max_radius_mm);
    num("s0", s.s0);
    num("beta", s.beta);
    if (j.contains("force_law")) {
      const auto law = detail::require_string(j, "force_law");
      if (law == "linear") {
        s.force_law = ForceLaw::Linear;
      } else if (law == "hertzian") {
        s.force_law = ForceLaw::Hertzian;
      } else {
        throw Error(ErrorKind::SchemaError, "force_law must be 'linear' or 'hertzian'");
      }
    }
    num("shear_coupling", s.shear_coupling);
    num("max_lateral_offset_mm", s.max_lateral_offset_mm);
    if (j.contains("feature_dim")) s.feature_dim = j.at("feature_dim").get<std::size_t>();
    num("feature_noise", s.feature_noise);
    num("trial_noise", s.trial_noise);
    num("grating_noise", s.grating_noise);
    num("grating_blur", s.grating_blur);
    if (j.contains("baseline_scene")) s.baseline_scene = detail::require_string(j, "baseline_scene");
    if (j.contains("scene_gains")) {
      s.scene_gains = j.at("scene_gains").get<std::map<std::string, double>>();
    }
    if (j.contains("scene_noise_factors")) {
      s.scene_noise_factors = j.at("scene_noise_factors").get<std::map<std::string, double>>();
    }
    num("base_intensity", s.base_intensity);
    num("edge_distortion", s.edge_distortion);
    num("edge_radius", s.edge_radius);
    num("max_depth_mm", s.max_depth_mm);
    num("max_force_n", s.max_force_n);
    boolean("clamp_depth", s.clamp_depth);
    if (j.contains("rng_seed")) s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("simspec field has the wrong type: ") + e.what());
  }
  s.validate();
  return s;
}

std::string simspec_to_json_text(const SimSensorSpec& s) {
  detail::Json j;
  j["sensor_name"] = s.sensor_name;
  j["camera_resolution_mp"] = s.camera_resolution_mp;
  j["gel_thickness_mm"] = s.gel_thickness_mm;
  j["fov_mm2"] = s.fov_mm2;
  j["fps_hz"] = s.fps_hz;
  j["opaque"] = s.opaque;
  j["dome_radius_mm"] = s.dome_radius_mm;
  j["center_x_mm"] = s.center_x_mm;
  j["center_y_mm"] = s.center_y_mm;
  j["max_radius_mm"] = s.max_radius_mm;
  j["s0"] = s.s0;
  j["beta"] = s.beta;
  j["force_law"] = std::string(to_string(s.force_law));
  j["shear_coupling"] = s.shear_coupling;
  j["max_lateral_offset_mm"] = s.max_lateral_offset_mm;
  j["feature_dim"] = s.feature_dim;
  j["feature_noise"] = s.feature_noise;
  j["trial_noise"] = s.trial_noise;
  j["grating_noise"] = s.grating_noise;
  j["grating_blur"] = s.grating_blur;
  j["baseline_scene"] = s.baseline_scene;
  j["scene_gains"] = s.scene_gains;
  j["scene_noise_factors"] = s.scene_noise_factors;
  j["base_intensity"] = s.base_intensity;
  j["edge_distortion"] = s.edge_distortion;
  j["edge_radius"] = s.edge_radius;
  j["max_depth_mm"] = s.max_depth_mm;
  j["max_force_n"] = s.max_force_n;
  j["clamp_depth"] = s.clamp_depth;
  j["rng_seed"] = s.rng_seed;
  return detail::dump(j);
}

SimSensorSpec load_simspec(const std::filesystem::path& path) {
  return simspec_from_json_text(detail::read_text(path));
}

void save_simspec(const SimSensorSpec& spec, const std::filesystem::path& path) {
  detail::write_text(path, simspec_to_json_text(spec));
}

VirtualSensor::VirtualSensor(SimSensorSpec spec)
    : spec_(std::move(spec)), scene_(spec_.baseline_scene) {
  spec_.validate();
  const std::size_t dim = spec_.feature_dim;

  Rng embed_rng(derive_seed(spec_.rng_seed, "embedding"));
  embedding_.resize(dim * kStateDims);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (auto& w : embedding_) w = embed_rng.normal() * scale * std::sqrt(static_cast<double>(kStateDims));

  // Gram-Schmidt on three random columns.
  Rng basis_rng(derive_seed(spec_.rng_seed, "grating-basis"));
  grating_basis_.assign(dim * 3, 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> v(dim);
    for (auto& x : v) x = basis_rng.normal();
    for (std::size_t p = 0; p < c; ++p) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += v[i] * grating_basis_[i * 3 + p];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * grating_basis_[i * 3 + p];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) grating_basis_[i * 3 + c] = v[i] / norm;
  }
}

SensorManifest VirtualSensor::manifest() const {
  SensorManifest m;
  m.sensor_name = spec_.sensor_name;
  m.camera_resolution_mp = spec_.camera_resolution_mp;
  m.gel_thickness_mm = spec_.gel_thickness_mm;
  m.fov_mm2 = spec_.fov_mm2;
  m.fps_hz = spec_.fps_hz;
  m.max_depth_mm = spec_.max_depth_mm;
  m.max_force_n = spec_.max_force_n;
  m.center_x_mm = spec_.center_x_mm;
  m.center_y_mm = spec_.center_y_mm;
  m.max_radius_mm = spec_.max_radius_mm;
  m.opaque = spec_.opaque;
  m.depth_distribution = "uniform(0, max_depth]";
  m.depth_step_mm = 0.1;
  return m;
}

void VirtualSensor::apply_scene(const std::string& scene_id) {
  if (!spec_.scene_gains.contains(scene_id)) {
    throw Error(ErrorKind::UnknownScene, "scene '" + scene_id + "' is not defined in the simspec");
  }
  scene_ = scene_id;
}

double VirtualSensor::radius_fraction(double x, double y) const noexcept {
  return std::hypot(x - spec_.center_x_mm, y - spec_.center_y_mm) / spec_.max_radius_mm;
}

double VirtualSensor::surface_height(double x, double y) const {
  if (spec_.dome_radius_mm == 0.0) return 0.0;
  const double r = std::hypot(x - spec_.center_x_mm, y - spec_.center_y_mm);
  const double rd = spec_.dome_radius_mm;
  return std::sqrt(std::max(0.0, rd * rd - r * r));
}

double VirtualSensor::sensitivity_at(double x, double y) const {
  const double q = radius_fraction(x, y);
  return spec_.s0 * (1.0 + spec_.beta * q * q);
}

double VirtualSensor::normal_force(double x, double y, double depth_mm) const {
  const double s = sensitivity_at(x, y);
  return spec_.force_law == ForceLaw::Linear ? depth_mm / s : std::pow(depth_mm, 1.5) / s;
}

double VirtualSensor::surface_probe(double x, double y, double step_mm) const {
  if (!(step_mm > 0.0)) throw Error(ErrorKind::InvalidArgument, "probe step must be positive");
  if (radius_fraction(x, y) > 1.0 + 1e-12) {
    throw Error(ErrorKind::OutOfSurface, "probe point lies outside the sensing radius");
  }
  const double h = surface_height(x, y);
  const double apex = surface_height(spec_.center_x_mm, spec_.center_y_mm);
  const auto start = static_cast<std::int64_t>(std::ceil(apex / step_mm)) + 1;
  for (std::int64_t k = start;; --k) {
    const double z = static_cast<double>(k) * step_mm;
    if (z <= h) return z;
  }
}

double VirtualSensor::noise_scale(double x, double y) const noexcept {
  double scale = 1.0;
  if (const auto it = spec_.scene_noise_factors.find(scene_); it != spec_.scene_noise_factors.end()) {
    scale *= it->second;
  }
  if (radius_fraction(x, y) > spec_.edge_radius) scale *= 1.0 + spec_.edge_distortion;
  return scale;
}

std::vector<double> VirtualSensor::embed(double x, double y, double depth_mm,
                                         std::array<double, 2> offset_mm) const {
  const double off = spec_.max_lateral_offset_mm;
  const std::array<double, kStateDims> u{
      (x - spec_.center_x_mm) / spec_.max_radius_mm,
      (y - spec_.center_y_mm) / spec_.max_radius_mm,
      depth_mm / spec_.max_depth_mm,
      off > 0.0 ? offset_mm[0] / off : 0.0,
      off > 0.0 ? offset_mm[1] / off : 0.0,
  };
  std::vector<double> f(spec_.feature_dim, 0.0);
  for (std::size_t i = 0; i < spec_.feature_dim; ++i) {
    for (std::size_t j = 0; j < kStateDims; ++j) f[i] += embedding_[i * kStateDims + j] * u[j];
  }
  return f;
}

ProbeSample VirtualSensor::indent(double x, double y, double depth_mm,
                                  std::array<double, 2> lateral_offset_mm) {
  if (depth_mm < 0.0) throw Error(ErrorKind::InvalidArgument, "indentation depth is negative");
  if (depth_mm > spec_.max_depth_mm) {
    throw Error(ErrorKind::SafeLimitExceeded, "depth " + detail::format_double(depth_mm) +
                                                  " mm exceeds the safe limit");
  }
  double fz = normal_force(x, y, depth_mm);
  if (fz > spec_.max_force_n) {
    if (!spec_.clamp_depth) {
      throw Error(ErrorKind::SafeLimitExceeded, "indentation would exceed the safe force limit");
    }
    const double s = sensitivity_at(x, y);
    depth_mm = spec_.force_law == ForceLaw::Linear ? spec_.max_force_n * s
                                                   : std::cbrt(std::pow(spec_.max_force_n * s, 2.0));
    fz = spec_.max_force_n;
  }

  ProbeSample sample;
  sample.label = {x,
                  y,
                  depth_mm,
                  spec_.shear_coupling * fz * lateral_offset_mm[0],
                  spec_.shear_coupling * fz * lateral_offset_mm[1],
                  fz};
  sample.features = embed(x, y, depth_mm, lateral_offset_mm);
  const double sigma = spec_.feature_noise * noise_scale(x, y);
  for (auto& v : sample.features) v += sigma * rng_.normal();
  sample.intensity = spec_.base_intensity * spec_.scene_gains.at(scene_);
  sample.scene_id = scene_;
  return sample;
}

std::vector<double> VirtualSensor::grating_features(double resolution_mm, double yaw_deg) {
  const double yaw = yaw_deg * std::numbers::pi / 180.0;
  const std::array<double, 3> u{
      kGratingGain * std::hypot(resolution_mm, spec_.grating_blur),
      kYawAmplitude * std::cos(2.0 * yaw),
      kYawAmplitude * std::sin(2.0 * yaw),
  };
  std::vector<double> f(spec_.feature_dim, 0.0);
  for (std::size_t i = 0; i < spec_.feature_dim; ++i) {
    for (std::size_t j = 0; j < 3; ++j) f[i] += grating_basis_[i * 3 + j] * u[j];
    f[i] += spec_.grating_noise * rng_.normal();
  }
  return f;
}

namespace {

/// Concentric square-to-disc mapping of a point in [-1, 1]^2.
std::array<double, 2> square_to_disc(double a, double b) {
  if (a == 0.0 && b == 0.0) return {0.0, 0.0};
  double r = 0.0;
  double phi = 0.0;
  if (std::abs(a) > std::abs(b)) {
    r = a;
    phi = (std::numbers::pi / 4.0) * (b / a);
  } else {
    r = b;
    phi = std::numbers::pi / 2.0 - (std::numbers::pi / 4.0) * (a / b);
  }
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

SensorDataset run_calibration_protocol(VirtualSensor& sensor, const CalibrationOptions& options,
                                       std::uint64_t seed) {
  if (options.grid == 0) throw Error(ErrorKind::InvalidArgument, "calibration grid is empty");
  const auto& spec = sensor.spec();
  sensor.reseed(derive_seed(seed, "calibration-noise"));
  Rng layout(derive_seed(seed, "calibration-layout"));

  const double n = static_cast<double>(options.grid);
  const double pitch = 2.0 * spec.max_radius_mm / n;
  const double off = spec.max_lateral_offset_mm;
  std::vector<ProbeSample> rows;
  rows.reserve(options.grid * options.grid * (options.depths_per_point + 1));
  std::uint64_t next_id = 0;
  std::int64_t point = 0;

  for (std::size_t iy = 0; iy < options.grid; ++iy) {
    for (std::size_t ix = 0; ix < options.grid; ++ix, ++point) {
      const auto disc = square_to_disc(2.0 * (static_cast<double>(ix) + 0.5) / n - 1.0,
                                       2.0 * (static_cast<double>(iy) + 0.5) / n - 1.0);
      double dx = disc[0] * spec.max_radius_mm + layout.uniform(-0.5, 0.5) * options.jitter * pitch;
      double dy = disc[1] * spec.max_radius_mm + layout.uniform(-0.5, 0.5) * options.jitter * pitch;
      const double r = std::hypot(dx, dy);
      if (r > spec.max_radius_mm) {
        dx *= spec.max_radius_mm / r;
        dy *= spec.max_radius_mm / r;
      }
      const double x = spec.center_x_mm + dx;
      const double y = spec.center_y_mm + dy;
      (void)sensor.surface_probe(x, y);

      auto contact = sensor.indent(x, y, 0.0, {0.0, 0.0});
      contact.sample_id = next_id++;
      contact.point_id = point;
      contact.depth_step = 0;
      rows.push_back(std::move(contact));

      for (std::size_t k = 1; k <= options.depths_per_point; ++k) {
        const double depth = spec.max_depth_mm * (1.0 - layout.uniform());
        const std::array<double, 2> shift{layout.uniform(-off, off), layout.uniform(-off, off)};
        auto s = sensor.indent(x, y, depth, shift);
        s.sample_id = next_id++;
        s.point_id = point;
        s.depth_step = static_cast<std::int64_t>(k);
        rows.push_back(std::move(s));
      }
    }
  }
  return SensorDataset::build(sensor.manifest(), std::move(rows), LoadOptions{.strict = true});
}

SensorDataset run_repeatability_protocol(VirtualSensor& sensor, const RepeatabilityOptions& options,
                                         std::uint64_t seed) {
  if (options.points == 0 || options.trials == 0) {
    throw Error(ErrorKind::InvalidArgument, "repeatability needs at least one point and one trial");
  }
  if (!(options.depth_step_mm > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "depth step must be positive");
  }
  const auto& spec = sensor.spec();
  sensor.reseed(derive_seed(seed, "repeatability-noise"));
  Rng layout(derive_seed(seed, "repeatability-layout"));
  const std::size_t steps =
      options.depth_steps > 0
          ? options.depth_steps
          : static_cast<std::size_t>(std::floor(spec.max_depth_mm / options.depth_step_mm + 1e-9));

  std::vector<ProbeSample> rows;
  rows.reserve(options.points * steps * options.trials);
  std::uint64_t next_id = 0;
  for (std::size_t k = 0; k < options.points; ++k) {
    const double r = spec.max_radius_mm * std::sqrt(layout.uniform());
    const double phi = 2.0 * std::numbers::pi * layout.uniform();
    const double x = spec.center_x_mm + r * std::cos(phi);
    const double y = spec.center_y_mm + r * std::sin(phi);
    (void)sensor.surface_probe(x, y);
    for (std::size_t d = 1; d <= steps; ++d) {
      const double depth = std::min(static_cast<double>(d) * options.depth_step_mm, spec.max_depth_mm);
      for (std::size_t t = 0; t < options.trials; ++t) {
        auto s = sensor.indent(x, y, depth, {0.0, 0.0});
        s.sample_id = next_id++;
        s.point_id = static_cast<std::int64_t>(k);
        s.depth_step = static_cast<std::int64_t>(d);
        s.trial_id = static_cast<std::int64_t>(t);
        rows.push_back(std::move(s));
      }
    }
  }
  auto manifest = sensor.manifest();
  manifest.depth_step_mm = options.depth_step_mm;
  return SensorDataset::build(std::move(manifest), std::move(rows), LoadOptions{.strict = true});
}

std::vector<GratingSample> run_grating_protocol(VirtualSensor& sensor, const GratingOptions& options,
                                                std::uint64_t seed) {
  for (double res : options.resolutions_mm) {
    if (!is_grating_resolution(res)) {
      throw Error(ErrorKind::OffLattice, "resolution " + detail::format_double(res) +
                                             " mm is not a board resolution");
    }
  }
  sensor.reseed(derive_seed(seed, "grating-noise"));
  Rng layout(derive_seed(seed, "grating-layout"));
  std::vector<GratingSample> out;
  out.reserve(options.resolutions_mm.size() * options.presses_per_board);
  std::uint64_t next_id = 0;
  for (double res : options.resolutions_mm) {
    const double snapped = snap_to_lattice(res);
    for (std::size_t p = 0; p < options.presses_per_board; ++p) {
      GratingSample g;
      g.sample_id = next_id++;
      g.resolution_mm = snapped;
      g.yaw_deg = layout.uniform(0.0, 360.0);
      g.features = sensor.grating_features(snapped, g.yaw_deg);
      out.push_back(std::move(g));
    }
  }
  return out;
}

PredictionSet direct_predictions(const VirtualSensor& sensor, std::span<const ProbeSample> samples,
                                 std::uint64_t seed) {
  const auto& spec = sensor.spec();
  Rng rng(derive_seed(seed, "direct-predictions"));
  PredictionSet out(PredictionSource::External);
  for (const auto& s : samples) {
    double sigma = spec.trial_noise;
    if (sensor.radius_fraction(s.value(Channel::Px), s.value(Channel::Py)) > spec.edge_radius) {
      sigma *= 1.0 + spec.edge_distortion;
    }
    Label6 pred = s.label;
    for (auto& v : pred) v += sigma * rng.normal();
    out.insert(s.sample_id, pred);
  }
  return out;
}

}  // namespace tacbench
