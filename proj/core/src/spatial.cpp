#include "tacbench/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tacbench/error.hpp"
#include "tacbench/stats.hpp"
#include "text_io.hpp"

namespace tacbench {

std::optional<double> sensitivity(const ProbeSample& sample, double f_min) {
  const double fz = std::abs(sample.value(Channel::Fz));
  if (fz < f_min || fz == 0.0) return std::nullopt;
  return sample.value(Channel::Pz) / fz;
}

std::vector<double> SensitivityMap::bin_edges_x() const {
  std::vector<double> edges(bins_per_axis + 1);
  for (std::size_t i = 0; i <= bins_per_axis; ++i) {
    edges[i] = origin_x_mm + static_cast<double>(i) * cell_mm;
  }
  return edges;
}

std::vector<double> SensitivityMap::bin_edges_y() const {
  std::vector<double> edges(bins_per_axis + 1);
  for (std::size_t i = 0; i <= bins_per_axis; ++i) {
    edges[i] = origin_y_mm + static_cast<double>(i) * cell_mm;
  }
  return edges;
}

std::vector<double> SensitivityMap::qualifying_means() const {
  std::vector<double> out;
  for (const auto& b : bins) {
    if (b.count >= min_occupancy) out.push_back(b.mean_s);
  }
  return out;
}

SensitivityMap sensitivity_map(std::span<const ProbeSample> samples, const SensorManifest& manifest,
                               const GridSpec& grid, double f_min) {
  SensitivityMap map;
  map.cell_mm = grid.cell_mm > 0.0 ? grid.cell_mm : manifest.max_radius_mm * kDefaultCellFraction;
  map.min_occupancy = grid.min_occupancy;
  map.origin_x_mm = manifest.center_x_mm - manifest.max_radius_mm;
  map.origin_y_mm = manifest.center_y_mm - manifest.max_radius_mm;
  map.bins_per_axis = static_cast<std::size_t>(
      std::max(1.0, std::ceil(2.0 * manifest.max_radius_mm / map.cell_mm - 1e-9)));

  const auto index = [&](double v, double origin) {
    const double f = std::floor((v - origin) / map.cell_mm);
    if (f <= 0.0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(f), map.bins_per_axis - 1);
  };

  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> acc;  // (iy, ix)
  for (const auto& s : samples) {
    const auto value = sensitivity(s, f_min);
    if (!value) {
      ++map.excluded_samples;
      continue;
    }
    ++map.included_samples;
    auto& [sum, count] = acc[{index(s.value(Channel::Py), map.origin_y_mm),
                              index(s.value(Channel::Px), map.origin_x_mm)}];
    sum += *value;
    ++count;
  }
  if (map.included_samples == 0) {
    throw Error(ErrorKind::NoIncludedSamples,
                "no sample reaches the force threshold of " + detail::format_double(f_min) + " N");
  }

  for (const auto& [key, entry] : acc) {
    SensitivityBin bin;
    bin.iy = key.first;
    bin.ix = key.second;
    bin.x_center_mm = map.origin_x_mm + (static_cast<double>(bin.ix) + 0.5) * map.cell_mm;
    bin.y_center_mm = map.origin_y_mm + (static_cast<double>(bin.iy) + 0.5) * map.cell_mm;
    bin.mean_s = entry.first / static_cast<double>(entry.second);
    bin.count = entry.second;
    map.bins.push_back(bin);
  }

  const auto means = map.qualifying_means();
  if (!means.empty()) map.mean_mu = mean(means);
  if (means.size() >= 2) {
    map.std_sigma = sample_std(means);
    if (*map.mean_mu != 0.0) map.uniformity_u = 1.0 / (1.0 + *map.std_sigma / std::abs(*map.mean_mu));
  }
  return map;
}

double uniformity(std::span<const double> bin_means) {
  if (bin_means.size() < 2) {
    throw Error(ErrorKind::TooFewBins, "uniformity needs at least two occupied bins");
  }
  const double mu = mean(bin_means);
  if (mu == 0.0) throw Error(ErrorKind::ZeroMean, "mean sensitivity is zero");
  return 1.0 / (1.0 + sample_std(bin_means) / std::abs(mu));
}

double uniformity(const SensitivityMap& map) {
  const auto means = map.qualifying_means();
  return uniformity(means);
}

std::string_view to_string(BinAxis axis) noexcept {
  return axis == BinAxis::RadialDistance ? "radial_distance" : "normalized_depth";
}

std::optional<BinAxis> parse_bin_axis(std::string_view name) noexcept {
  if (name == "radial_distance") return BinAxis::RadialDistance;
  if (name == "normalized_depth") return BinAxis::NormalizedDepth;
  return std::nullopt;
}

std::size_t bin_count(double width) {
  if (!(width > 0.0) || width > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "bin width must lie in (0, 1]");
  }
  return static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / width - 1e-9)));
}

std::size_t bin_of(double v, double width) {
  const std::size_t n = bin_count(width);
  const double f = std::floor(v / width);
  if (f <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(f), n - 1);
}

BinSeries rolling_mean(const BinSeries& series, std::size_t window) {
  if (window == 0 || window % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "smoothing window must be a positive odd number");
  }
  BinSeries out = series;
  const std::size_t n = series.size();
  const std::size_t half = window / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += series.means[j];
    out.means[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

BinSeries binned_errors(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                        const SensorManifest& manifest, BinAxis axis, ChannelGroup group,
                        double bin_width, const std::optional<NormParams>& norm,
                        ClampCounter* clamps) {
  require_predictions(predictions, samples);
  const std::size_t n_bins = bin_count(bin_width);
  std::vector<double> sums(n_bins, 0.0);
  std::vector<std::size_t> counts(n_bins, 0);
  const auto channels = channels_of(group);

  for (const auto& s : samples) {
    Label6 truth = s.label;
    Label6 pred = *predictions.find(s.sample_id);
    if (norm) {
      truth = normalize(truth, *norm);
      pred = normalize(pred, *norm);
    }
    double err = 0.0;
    for (Channel c : channels) err += std::abs(truth[index_of(c)] - pred[index_of(c)]);
    err /= static_cast<double>(channels.size());

    const double v = axis == BinAxis::RadialDistance ? radial_distance(s, manifest, clamps)
                                                     : normalized_depth(s, manifest, clamps);
    const std::size_t b = bin_of(v, bin_width);
    sums[b] += err;
    ++counts[b];
  }

  BinSeries series;
  series.axis = axis;
  series.bin_width = bin_width;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (counts[b] == 0) continue;
    series.bin_index.push_back(b);
    series.means.push_back(sums[b] / static_cast<double>(counts[b]));
    series.counts.push_back(counts[b]);
  }
  return series;
}

double spatial_robustness(const BinSeries& dist_series, const BinSeries& depth_series,
                          std::size_t window) {
  if (dist_series.size() < 2 || depth_series.size() < 2) {
    throw Error(ErrorKind::TooFewBins, "spatial robustness needs two occupied bins per axis");
  }
  const auto dist = rolling_mean(dist_series, window);
  const auto depth = rolling_mean(depth_series, window);
  return 0.5 * (sample_std(dist.means) + sample_std(depth.means));
}

SpatialReport spatial_report(std::span<const ProbeSample> samples, const PredictionSet& predictions,
                             const SensorManifest& manifest, const std::optional<NormParams>& norm,
                             double bin_width, std::size_t window) {
  SpatialReport report;
  report.window = window;
  report.bin_width = bin_width;
  for (ChannelGroup g : kAllGroups) {
    if (!manifest.supports(g)) continue;
    ClampCounter clamps;
    SpatialGroupResult r;
    r.distance = binned_errors(samples, predictions, manifest, BinAxis::RadialDistance, g,
                               bin_width, norm, &clamps);
    r.depth = binned_errors(samples, predictions, manifest, BinAxis::NormalizedDepth, g, bin_width,
                            norm, &clamps);
    r.r_spatial = spatial_robustness(r.distance, r.depth, window);
    report.clamped_values = std::max(report.clamped_values, clamps.count);
    report.groups.emplace(g, std::move(r));
  }
  return report;
}

std::string format_bin_series(const BinSeries& series, std::size_t window) {
  const auto smoothed = rolling_mean(series, window);
  std::ostringstream out;
  out << "axis,bin_center,mean_mae,count,smoothed_mae\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << to_string(series.axis) << ',' << detail::format_double(series.bin_center(i)) << ','
        << detail::format_double(series.means[i]) << ',' << series.counts[i] << ','
        << detail::format_double(smoothed.means[i]) << '\n';
  }
  return out.str();
}

BinSeries parse_bin_series(std::string_view csv_text, BinAxis axis, double bin_width) {
  BinSeries series;
  series.axis = axis;
  series.bin_width = bin_width;
  const std::size_t n_bins = bin_count(bin_width);
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "axis,bin_center,mean_mae,count,smoothed_mae") {
    throw Error(ErrorKind::SchemaError, "bin series header mismatch");
  }
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(detail::trim(line));
    if (fields.size() != 5) throw Error(ErrorKind::SchemaError, "bin series row needs 5 fields");
    const auto row_axis = parse_bin_axis(fields[0]);
    if (!row_axis) throw Error(ErrorKind::SchemaError, "unknown axis '" + std::string(fields[0]) + "'");
    if (*row_axis != axis) continue;
    const double center = detail::parse_double(fields[1], "bin_center");
    const double idx = std::round(center / bin_width - 0.5);
    if (idx < 0.0 || idx >= static_cast<double>(n_bins)) {
      throw Error(ErrorKind::SchemaError, "bin center outside [0, 1]");
    }
    series.bin_index.push_back(static_cast<std::size_t>(idx));
    series.means.push_back(detail::parse_double(fields[2], "mean_mae"));
    series.counts.push_back(detail::parse_uint(fields[3], "count"));
  }
  return series;
}

std::string format_heatmap(const SensitivityMap& map) {
  std::ostringstream out;
  out << "bin_x_index,bin_y_index,x_center_mm,y_center_mm,mean_s_mm_per_n,count\n";
  for (const auto& b : map.bins) {
    out << b.ix << ',' << b.iy << ',' << detail::format_double(b.x_center_mm) << ','
        << detail::format_double(b.y_center_mm) << ',' << detail::format_double(b.mean_s) << ','
        << b.count << '\n';
  }
  return out.str();
}

}  // namespace tacbench
