#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/split.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

/// Guards the sMAPE denominator when truth and prediction are both zero.
inline constexpr double kSmapeEpsilon = 1e-8;

/// Paired truth/prediction values. Construction enforces equal lengths,
/// at least one pair and finite values (InvalidSeries otherwise).
class MetricSeries {
 public:
  MetricSeries(std::vector<double> truth, std::vector<double> prediction);

  [[nodiscard]] std::span<const double> truth() const noexcept { return truth_; }
  [[nodiscard]] std::span<const double> prediction() const noexcept { return prediction_; }
  [[nodiscard]] std::size_t size() const noexcept { return truth_.size(); }

 private:
  std::vector<double> truth_;
  std::vector<double> prediction_;
};

/// (1/n) sum |y - yhat|
double mae(const MetricSeries& series);
/// 1 - sum (y - yhat)^2 / sum (y - mean y)^2. Throws ZeroVariance for constant truth.
double r_squared(const MetricSeries& series);
/// (1/n) sum |y - yhat| / ((|y| + |yhat|)/2 + 1e-8) * 100, in percent.
double smape(const MetricSeries& series);

struct RegressionScores {
  double mae = 0.0;
  double r2 = 0.0;
  double smape = 0.0;

  bool operator==(const RegressionScores&) const = default;
};

RegressionScores score(const MetricSeries& series);

/// Builds the series for one reporting group. Single-axis groups use one
/// channel; Fxy/Pxy stack all x values followed by all y values (length 2n).
/// With `norm` set the values are min-max normalized first.
/// Throws MissingPrediction listing every absent id.
MetricSeries group_series(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                          ChannelGroup group, const std::optional<NormParams>& norm);

/// Per-group MAE / R^2 / sMAPE rows (Fxy, Fz, Pxy, Pz).
struct CalibrationReport {
  std::map<ChannelGroup, RegressionScores> groups;
  bool normalized = true;
  std::size_t sample_count = 0;

  bool operator==(const CalibrationReport&) const = default;
};

CalibrationReport channel_report(std::span<const ProbeSample> samples,
                                 const PredictionSet& predictions,
                                 const std::optional<NormParams>& norm);

/// Evaluates the samples of `which` split (the test split in normal use).
CalibrationReport channel_report(const SensorDataset& dataset, const PredictionSet& predictions,
                                 const SplitAssignment& split, Split which,
                                 const std::optional<NormParams>& norm);

}  // namespace tacbench
