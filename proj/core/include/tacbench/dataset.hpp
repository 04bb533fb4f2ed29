#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tacbench/error.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

/// Static description of a sensor: intrinsic hardware metrics, safe operating
/// limits and surface geometry. Serialized as manifest.json.
struct SensorManifest {
  std::string sensor_name;
  double camera_resolution_mp = 0.0;
  double gel_thickness_mm = 0.0;
  double fov_mm2 = 0.0;
  double fps_hz = 0.0;
  double max_depth_mm = 0.0;  ///< safe indentation limit
  double max_force_n = 0.0;   ///< safe normal-force limit
  double center_x_mm = 0.0;
  double center_y_mm = 0.0;
  double max_radius_mm = 0.0;

  // Optional keys.
  bool opaque = false;                              ///< lighting robustness not applicable
  std::vector<ChannelGroup> channels_supported;     ///< empty means all groups
  std::string depth_distribution;                   ///< provenance of Stage-2 depths
  double depth_step_mm = 0.1;                       ///< physical size of one depth_step

  /// Throws InvalidValue when an invariant is broken.
  void validate() const;
  [[nodiscard]] bool supports(ChannelGroup group) const noexcept;

  bool operator==(const SensorManifest&) const = default;
};

SensorManifest manifest_from_json_text(std::string_view text);
std::string manifest_to_json_text(const SensorManifest& manifest);
SensorManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const SensorManifest& manifest, const std::filesystem::path& path);

/// One synchronized observation at probe location `point_id`.
struct ProbeSample {
  std::uint64_t sample_id = 0;
  std::int64_t point_id = 0;
  std::int64_t trial_id = 0;
  std::int64_t depth_step = 0;
  Label6 label{};  ///< Px, Py, Pz (mm), Fx, Fy, Fz (N)
  double intensity = 0.0;
  std::string scene_id;
  std::vector<double> features;
  std::string image_path;  ///< carried opaquely for external predictors

  [[nodiscard]] double value(Channel c) const noexcept { return label[index_of(c)]; }

  bool operator==(const ProbeSample&) const = default;
};

struct ValidationIssue {
  ErrorKind kind;
  std::uint64_t sample_id;
  std::string message;
};

struct LoadOptions {
  /// Throw on the first row-level issue instead of collecting it.
  bool strict = false;
};

/// Manifest plus validated sample table. Immutable after construction.
class SensorDataset {
 public:
  SensorDataset() = default;

  /// Validates each row against the manifest. Rows that violate an invariant
  /// are dropped and reported through issues() unless options.strict is set,
  /// in which case the first issue is thrown. Inconsistent feature dimensions
  /// are a schema violation and always throw.
  static SensorDataset build(SensorManifest manifest, std::vector<ProbeSample> rows,
                             const LoadOptions& options = {});

  [[nodiscard]] const SensorManifest& manifest() const noexcept { return manifest_; }
  [[nodiscard]] std::span<const ProbeSample> samples() const noexcept { return samples_; }
  [[nodiscard]] std::span<const ValidationIssue> issues() const noexcept { return issues_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] bool empty() const noexcept { return samples_.empty(); }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return feature_dim_; }
  [[nodiscard]] bool uses_image_paths() const noexcept { return image_paths_; }

  [[nodiscard]] const ProbeSample* find(std::uint64_t sample_id) const noexcept;
  /// Throws UnknownSampleId.
  [[nodiscard]] const ProbeSample& at(std::uint64_t sample_id) const;
  [[nodiscard]] std::vector<std::uint64_t> ids() const;
  /// Copies of the listed samples in the given order. Throws UnknownSampleId.
  [[nodiscard]] std::vector<ProbeSample> subset(std::span<const std::uint64_t> ids) const;

  /// Throws the first collected issue, if any.
  void require_valid() const;

 private:
  SensorManifest manifest_;
  std::vector<ProbeSample> samples_;
  std::vector<ValidationIssue> issues_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::size_t feature_dim_ = 0;
  bool image_paths_ = false;
};

/// Fixed leading columns of samples.csv, in order.
std::span<const std::string_view> sample_table_columns() noexcept;

SensorDataset load_dataset(const std::filesystem::path& manifest_path,
                           const std::filesystem::path& samples_path,
                           const LoadOptions& options = {});
std::vector<ProbeSample> parse_sample_table(std::string_view csv_text);
std::string format_sample_table(std::span<const ProbeSample> samples);
void save_dataset(const SensorDataset& dataset, const std::filesystem::path& manifest_path,
                  const std::filesystem::path& samples_path);

/// Counts how many values had to be clamped into [0, 1].
struct ClampCounter {
  std::size_t count = 0;
};

/// ||(Px, Py) - center|| / max_radius, clamped to [0, 1].
double radial_distance(const ProbeSample& sample, const SensorManifest& manifest,
                       ClampCounter* clamps = nullptr);
/// Pz / max_depth, clamped to [0, 1].
double normalized_depth(const ProbeSample& sample, const SensorManifest& manifest,
                        ClampCounter* clamps = nullptr);

}  // namespace tacbench
