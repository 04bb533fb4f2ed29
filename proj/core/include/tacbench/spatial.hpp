#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

inline constexpr double kDefaultForceThreshold = 0.05;  // N
inline constexpr std::size_t kDefaultSmoothingWindow = 5;
inline constexpr double kDefaultBinWidth = 0.01;
inline constexpr double kDefaultCellFraction = 0.1;
inline constexpr std::size_t kDefaultMinOccupancy = 3;

/// Pz / |Fz| in mm/N, or nullopt when |Fz| < f_min.
std::optional<double> sensitivity(const ProbeSample& sample, double f_min = kDefaultForceThreshold);

struct GridSpec {
  double cell_mm = 0.0;  ///< 0 selects max_radius * kDefaultCellFraction
  std::size_t min_occupancy = kDefaultMinOccupancy;
};

struct SensitivityBin {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double x_center_mm = 0.0;
  double y_center_mm = 0.0;
  double mean_s = 0.0;
  std::size_t count = 0;

  bool operator==(const SensitivityBin&) const = default;
};

/// Square-binned sensitivity over the sensing disc. Only occupied bins are
/// stored; mu / sigma / U use bins with count >= min_occupancy.
struct SensitivityMap {
  double cell_mm = 0.0;
  double origin_x_mm = 0.0;  ///< lower edge of bin column 0
  double origin_y_mm = 0.0;  ///< lower edge of bin row 0
  std::size_t bins_per_axis = 0;
  std::size_t min_occupancy = kDefaultMinOccupancy;
  std::vector<SensitivityBin> bins;  ///< sorted by (iy, ix)
  std::size_t included_samples = 0;
  std::size_t excluded_samples = 0;
  std::optional<double> mean_mu;
  std::optional<double> std_sigma;
  std::optional<double> uniformity_u;

  [[nodiscard]] std::vector<double> bin_edges_x() const;
  [[nodiscard]] std::vector<double> bin_edges_y() const;
  [[nodiscard]] std::vector<double> qualifying_means() const;
};

/// Throws NoIncludedSamples.
SensitivityMap sensitivity_map(std::span<const ProbeSample> samples, const SensorManifest& manifest,
                               const GridSpec& grid = {}, double f_min = kDefaultForceThreshold);

/// 1 / (1 + sigma / |mu|) over bin means. Throws TooFewBins or ZeroMean.
double uniformity(std::span<const double> bin_means);
double uniformity(const SensitivityMap& map);

enum class BinAxis : std::uint8_t { RadialDistance, NormalizedDepth };
std::string_view to_string(BinAxis axis) noexcept;
std::optional<BinAxis> parse_bin_axis(std::string_view name) noexcept;

/// Mean error per occupied bin along one normalized axis. Bins cover [0, 1];
/// empty bins are not stored.
struct BinSeries {
  BinAxis axis = BinAxis::RadialDistance;
  double bin_width = kDefaultBinWidth;
  std::vector<std::size_t> bin_index;
  std::vector<double> means;
  std::vector<std::size_t> counts;

  [[nodiscard]] std::size_t size() const noexcept { return means.size(); }
  [[nodiscard]] double bin_center(std::size_t i) const noexcept {
    return (static_cast<double>(bin_index[i]) + 0.5) * bin_width;
  }
  bool operator==(const BinSeries&) const = default;
};

/// Number of bins of `width` covering [0, 1].
std::size_t bin_count(double width);
/// Bin holding normalized value v (v = 1 falls in the last bin).
std::size_t bin_of(double v, double width);

/// Centered moving average over the occupied bins. Near the ends the window
/// is truncated to the bins that exist. Counts are preserved.
/// Throws InvalidArgument for an even or zero window.
BinSeries rolling_mean(const BinSeries& series, std::size_t window);

/// Per-sample error is the mean |y - yhat| over the group's channels
/// (normalized when `norm` is set). Throws MissingPrediction.
BinSeries binned_errors(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                        const SensorManifest& manifest, BinAxis axis, ChannelGroup group,
                        double bin_width = kDefaultBinWidth,
                        const std::optional<NormParams>& norm = std::nullopt,
                        ClampCounter* clamps = nullptr);

/// 1/2 (STD(dist means) + STD(depth means)) after smoothing both series with
/// `window`. Throws TooFewBins.
double spatial_robustness(const BinSeries& dist_series, const BinSeries& depth_series,
                          std::size_t window = kDefaultSmoothingWindow);

struct SpatialGroupResult {
  double r_spatial = 0.0;
  BinSeries distance;  ///< unsmoothed
  BinSeries depth;     ///< unsmoothed
};

struct SpatialReport {
  std::map<ChannelGroup, SpatialGroupResult> groups;
  std::size_t window = kDefaultSmoothingWindow;
  double bin_width = kDefaultBinWidth;
  std::size_t clamped_values = 0;
};

/// Runs binned_errors on both axes and spatial_robustness for every group the
/// manifest supports.
SpatialReport spatial_report(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                             const SensorManifest& manifest, const std::optional<NormParams>& norm,
                             double bin_width = kDefaultBinWidth,
                             std::size_t window = kDefaultSmoothingWindow);

/// binseries.csv: axis,bin_center,mean_mae,count,smoothed_mae
std::string format_bin_series(const BinSeries& series, std::size_t window);
/// Reads the rows of one axis back. Throws SchemaError.
BinSeries parse_bin_series(std::string_view csv_text, BinAxis axis, double bin_width);

/// heatmap.csv: bin_x_index,bin_y_index,x_center_mm,y_center_mm,mean_s_mm_per_n,count
std::string format_heatmap(const SensitivityMap& map);

}  // namespace tacbench
