#include "tacbench/metrics.hpp"

#include <cmath>
#include <string>

namespace tacbench {

MetricSeries::MetricSeries(std::vector<double> truth, std::vector<double> prediction)
    : truth_(std::move(truth)), prediction_(std::move(prediction)) {
  if (truth_.size() != prediction_.size()) {
    throw Error(ErrorKind::InvalidSeries, "truth has " + std::to_string(truth_.size()) +
                                              " values but prediction has " +
                                              std::to_string(prediction_.size()));
  }
  if (truth_.empty()) throw Error(ErrorKind::InvalidSeries, "series is empty");
  for (std::size_t i = 0; i < truth_.size(); ++i) {
    if (!std::isfinite(truth_[i]) || !std::isfinite(prediction_[i])) {
      throw Error(ErrorKind::InvalidSeries, "non-finite value at index " + std::to_string(i));
    }
  }
}

double mae(const MetricSeries& series) {
  const auto y = series.truth();
  const auto p = series.prediction();
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += std::abs(y[i] - p[i]);
  return sum / static_cast<double>(y.size());
}

double r_squared(const MetricSeries& series) {
  const auto y = series.truth();
  const auto p = series.prediction();
  const auto n = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - p[i]) * (y[i] - p[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) throw Error(ErrorKind::ZeroVariance, "truth values are all equal");
  return 1.0 - ss_res / ss_tot;
}

double smape(const MetricSeries& series) {
  const auto y = series.truth();
  const auto p = series.prediction();
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double denom = (std::abs(y[i]) + std::abs(p[i])) / 2.0 + kSmapeEpsilon;
    sum += std::abs(y[i] - p[i]) / denom;
  }
  return sum / static_cast<double>(y.size()) * 100.0;
}

RegressionScores score(const MetricSeries& series) {
  return {mae(series), r_squared(series), smape(series)};
}

MetricSeries group_series(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                          ChannelGroup group, const std::optional<NormParams>& norm) {
  require_predictions(predictions, samples);
  const auto channels = channels_of(group);
  std::vector<double> truth;
  std::vector<double> pred;
  truth.reserve(samples.size() * channels.size());
  pred.reserve(samples.size() * channels.size());
  for (Channel c : channels) {
    const auto ci = index_of(c);
    for (const auto& s : samples) {
      const Label6& raw_pred = *predictions.find(s.sample_id);
      if (norm) {
        truth.push_back(normalize(s.label, *norm)[ci]);
        pred.push_back(normalize(raw_pred, *norm)[ci]);
      } else {
        truth.push_back(s.label[ci]);
        pred.push_back(raw_pred[ci]);
      }
    }
  }
  return MetricSeries(std::move(truth), std::move(pred));
}

CalibrationReport channel_report(std::span<const ProbeSample> samples,
                                 const PredictionSet& predictions,
                                 const std::optional<NormParams>& norm) {
  CalibrationReport report;
  report.normalized = norm.has_value();
  report.sample_count = samples.size();
  for (ChannelGroup g : kAllGroups) {
    report.groups.emplace(g, score(group_series(samples, predictions, g, norm)));
  }
  return report;
}

CalibrationReport channel_report(const SensorDataset& dataset, const PredictionSet& predictions,
                                 const SplitAssignment& split, Split which,
                                 const std::optional<NormParams>& norm) {
  const auto ids = split.ids(which);
  const auto samples = dataset.subset(ids);
  return channel_report(samples, predictions, norm);
}

}  // namespace tacbench
