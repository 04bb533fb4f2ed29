#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tacbench/split.hpp"

namespace tacbench {

/// Every tolerance, window and protocol size used by the pipeline. Serialized
/// as config.json and echoed into each report.
struct EvalConfig {
  std::uint64_t seed = 0;
  double f_min_n = 0.05;
  std::size_t smoothing_window = 5;
  double bin_width = 0.01;
  double cell_fraction = 0.1;
  std::size_t min_occupancy = 3;
  std::size_t k = 3;
  SplitRatios ratios;
  bool group_by_point = false;
  bool normalized = true;
  std::vector<double> sr_thresholds_mm;  ///< empty = 0.00 .. 1.50 step 0.05
  double grating_train_fraction = 0.7;
  double depth_step_mm = 0.1;
  std::size_t calibration_grid = 40;
  std::size_t depths_per_point = 4;
  std::size_t repeat_points = 100;
  std::size_t repeat_trials = 10;
  std::size_t presses_per_board = 100;

  /// Throws InvalidArgument.
  void validate() const;
  [[nodiscard]] std::vector<double> thresholds() const;
  bool operator==(const EvalConfig&) const = default;
};

/// Missing keys keep their defaults; unknown keys are a SchemaError.
EvalConfig config_from_json_text(std::string_view text);
std::string config_to_json_text(const EvalConfig& config);
EvalConfig load_config(const std::filesystem::path& path);
void save_config(const EvalConfig& config, const std::filesystem::path& path);

}  // namespace tacbench
