#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/gratings.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/rng.hpp"

namespace tacbench {

enum class ForceLaw : std::uint8_t { Linear, Hertzian };

/// Analytic virtual sensor. Sensitivity S(r) = s0 (1 + beta (r/R)^2) mm/N.
/// Linear law: Fz = depth / S. Hertzian law: Fz = depth^1.5 / S.
struct SimSensorSpec {
  std::string sensor_name = "simtip";
  double camera_resolution_mp = 2.0;
  double gel_thickness_mm = 3.0;
  double fov_mm2 = 900.0;
  double fps_hz = 30.0;
  bool opaque = false;

  double dome_radius_mm = 0.0;  ///< 0 = flat surface; otherwise >= max_radius
  double center_x_mm = 0.0;
  double center_y_mm = 0.0;
  double max_radius_mm = 17.0;

  double s0 = 5.0;
  double beta = 1.0;
  ForceLaw force_law = ForceLaw::Linear;
  double shear_coupling = 0.5;  ///< N per mm of lateral offset per N of normal force
  double max_lateral_offset_mm = 0.5;

  std::size_t feature_dim = 16;
  double feature_noise = 0.01;
  double trial_noise = 0.0;    ///< prediction-level noise for direct_predictions
  double grating_noise = 0.05;
  double grating_blur = 0.0;   ///< mm added in quadrature to the grating signal

  std::string baseline_scene = "S0";
  std::map<std::string, double> scene_gains{{"S0", 1.0}};
  std::map<std::string, double> scene_noise_factors;  ///< missing = 1
  double base_intensity = 20.0;

  double edge_distortion = 0.0;  ///< noise inflation for r/R > edge_radius
  double edge_radius = 0.8;

  double max_depth_mm = 3.5;
  double max_force_n = 0.7;
  bool clamp_depth = true;
  std::uint64_t rng_seed = 1;

  /// Throws InvalidValue.
  void validate() const;
  bool operator==(const SimSensorSpec&) const = default;
};

SimSensorSpec simspec_from_json_text(std::string_view text);
std::string simspec_to_json_text(const SimSensorSpec& spec);
SimSensorSpec load_simspec(const std::filesystem::path& path);
void save_simspec(const SimSensorSpec& spec, const std::filesystem::path& path);

class VirtualSensor {
 public:
  explicit VirtualSensor(SimSensorSpec spec);

  [[nodiscard]] const SimSensorSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] SensorManifest manifest() const;
  [[nodiscard]] const std::string& scene() const noexcept { return scene_; }

  /// Throws UnknownScene.
  void apply_scene(const std::string& scene_id);
  void reseed(std::uint64_t seed) { rng_.reseed(seed); }

  [[nodiscard]] double radius_fraction(double x, double y) const noexcept;
  [[nodiscard]] double surface_height(double x, double y) const;
  [[nodiscard]] double sensitivity_at(double x, double y) const;
  /// Normal force for an indentation depth at (x, y).
  [[nodiscard]] double normal_force(double x, double y, double depth_mm) const;

  /// Steps down from above the apex until at or below the surface.
  /// Throws OutOfSurface.
  [[nodiscard]] double surface_probe(double x, double y, double step_mm = 0.1) const;

  /// One indentation. Labels are exact; features and noise come from the
  /// sensor's RNG. Depths that would exceed max_force are clamped so that
  /// Fz = max_force (SafeLimitExceeded when clamping is disabled).
  ProbeSample indent(double x, double y, double depth_mm, std::array<double, 2> lateral_offset_mm);

  /// Noise-free feature embedding of the indentation state.
  [[nodiscard]] std::vector<double> embed(double x, double y, double depth_mm,
                                          std::array<double, 2> offset_mm) const;
  /// One grating press (features only, noise included).
  std::vector<double> grating_features(double resolution_mm, double yaw_deg);

 private:
  [[nodiscard]] double noise_scale(double x, double y) const noexcept;

  SimSensorSpec spec_;
  std::string scene_;
  Rng rng_;
  std::vector<double> embedding_;  ///< feature_dim x 5, row-major
  std::vector<double> grating_basis_;  ///< feature_dim x 3, orthonormal columns
};

struct CalibrationOptions {
  std::size_t grid = 40;  ///< grid x grid probe points
  std::size_t depths_per_point = 4;
  double jitter = 0.25;   ///< fraction of the grid pitch
};

/// Stage 1 contact probe plus randomized indentations per grid point.
/// Depths are uniform on (0, max_depth].
SensorDataset run_calibration_protocol(VirtualSensor& sensor, const CalibrationOptions& options,
                                       std::uint64_t seed);

struct RepeatabilityOptions {
  std::size_t points = 100;
  std::size_t trials = 10;
  double depth_step_mm = 0.1;
  std::size_t depth_steps = 0;  ///< 0 = floor(max_depth / depth_step)
};

SensorDataset run_repeatability_protocol(VirtualSensor& sensor, const RepeatabilityOptions& options,
                                         std::uint64_t seed);

struct GratingOptions {
  std::size_t presses_per_board = 100;
  std::vector<double> resolutions_mm = grating_resolutions();
};

/// Throws OffLattice.
std::vector<GratingSample> run_grating_protocol(VirtualSensor& sensor, const GratingOptions& options,
                                                std::uint64_t seed);

/// Labels plus Gaussian noise of trial_noise (inflated at the rim like the
/// features), tagged External.
PredictionSet direct_predictions(const VirtualSensor& sensor, std::span<const ProbeSample> samples,
                                 std::uint64_t seed);

}  // namespace tacbench
