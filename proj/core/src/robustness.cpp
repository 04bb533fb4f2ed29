#include "tacbench/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tacbench/error.hpp"
#include "tacbench/stats.hpp"
#include "text_io.hpp"

namespace tacbench {

double light_robustness(double mae_o, double mae_c, double i_o, double i_c) {
  if (mae_o < 0.0 || mae_c < 0.0 || i_o < 0.0 || i_c < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "errors and intensities must be non-negative");
  }
  if (mae_o == 0.0) throw Error(ErrorKind::BaselineZero, "baseline MAE is zero");
  if (i_o == 0.0) throw Error(ErrorKind::BaselineZero, "baseline intensity is zero");
  const double di = std::abs(i_c / i_o - 1.0);
  const double de = std::abs(mae_c / mae_o - 1.0);
  if (di + de == 0.0) {
    throw Error(ErrorKind::UndefinedRobustness, "scene matches the baseline in intensity and error");
  }
  return di / (di + de);
}

double mean_intensity(std::span<const ProbeSample> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptySet, "scene has no samples");
  double sum = 0.0;
  for (const auto& s : samples) sum += s.intensity;
  return sum / static_cast<double>(samples.size());
}

LightReport light_report(const SceneEvaluation& baseline, std::span<const SceneEvaluation> scenes) {
  LightReport report;
  report.baseline_scene = baseline.scene_id;
  std::map<ChannelGroup, std::pair<double, std::size_t>> r_sums;
  std::map<ChannelGroup, double> deg_sums;

  for (const auto& scene : scenes) {
    LightRow row;
    row.scene_id = scene.scene_id;
    for (const auto& [group, mae_o] : baseline.mae) {
      const auto it = scene.mae.find(group);
      if (it == scene.mae.end()) {
        throw Error(ErrorKind::InvalidArgument, "scene " + scene.scene_id + " lacks group " +
                                                    std::string(to_string(group)));
      }
      LightCell cell;
      cell.mae_baseline = mae_o;
      cell.mae_scene = it->second;
      cell.intensity_baseline = baseline.intensity;
      cell.intensity_scene = scene.intensity;
      if (mae_o == 0.0) throw Error(ErrorKind::BaselineZero, "baseline MAE is zero");
      cell.degradation_pct = std::abs(cell.mae_scene / mae_o - 1.0) * 100.0;
      try {
        cell.r_light = light_robustness(mae_o, cell.mae_scene, baseline.intensity, scene.intensity);
        r_sums[group].first += *cell.r_light;
        ++r_sums[group].second;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedRobustness) throw;
      }
      deg_sums[group] += cell.degradation_pct;
      row.cells.emplace(group, cell);
    }
    report.rows.push_back(std::move(row));
  }

  if (!scenes.empty()) {
    for (const auto& [group, mae_o] : baseline.mae) {
      LightMean m;
      m.degradation_pct = deg_sums[group] / static_cast<double>(scenes.size());
      const auto& [sum, count] = r_sums[group];
      if (count > 0) m.r_light = sum / static_cast<double>(count);
      report.mean.emplace(group, m);
    }
  }
  return report;
}

LightReport opaque_light_report() {
  LightReport report;
  report.excluded_opaque = true;
  return report;
}

std::string format_light_report(const LightReport& report) {
  std::ostringstream out;
  out << "scene_id,group,mae_baseline,mae_scene,intensity_baseline,intensity_scene,"
         "degradation_pct,r_light\n";
  for (const auto& row : report.rows) {
    for (const auto& [group, cell] : row.cells) {
      out << row.scene_id << ',' << to_string(group) << ','
          << detail::format_double(cell.mae_baseline) << ','
          << detail::format_double(cell.mae_scene) << ','
          << detail::format_double(cell.intensity_baseline) << ','
          << detail::format_double(cell.intensity_scene) << ','
          << detail::format_double(cell.degradation_pct) << ','
          << (cell.r_light ? detail::format_double(*cell.r_light) : std::string("UNDEFINED"))
          << '\n';
    }
  }
  return out.str();
}

namespace {

RepeatabilityResult repeatability_over(std::span<const TrialGroup> groups,
                                       std::span<const Channel> channels) {
  if (groups.empty()) throw Error(ErrorKind::EmptySet, "no trial groups");
  const std::size_t n = groups.front().trials.size();
  if (n < 2) throw Error(ErrorKind::InsufficientTrials, "repeatability needs at least two trials");

  std::map<std::int64_t, std::pair<double, std::size_t>> per_depth;
  double total = 0.0;
  std::vector<double> values(n);
  for (const auto& g : groups) {
    if (g.trials.size() != n) {
      throw Error(ErrorKind::RaggedGroups, "trial counts differ between groups");
    }
    double group_std = 0.0;
    for (Channel c : channels) {
      for (std::size_t r = 0; r < n; ++r) values[r] = g.trials[r][index_of(c)];
      group_std += sample_std(values);
    }
    group_std /= static_cast<double>(channels.size());
    total += group_std;
    auto& [sum, count] = per_depth[g.depth_step];
    sum += group_std;
    ++count;
  }

  const std::size_t per = per_depth.begin()->second.second;
  RepeatabilityResult result;
  for (const auto& [depth, entry] : per_depth) {
    if (entry.second != per) {
      throw Error(ErrorKind::RaggedGroups, "depth steps hold different numbers of points");
    }
    result.depth_curve.emplace(depth, entry.first / static_cast<double>(entry.second));
  }
  result.rep = total / static_cast<double>(groups.size());
  result.group_count = groups.size();
  result.trials_per_group = n;
  return result;
}

}  // namespace

RepeatabilityResult repeatability(std::span<const TrialGroup> groups, Channel channel) {
  const Channel one[] = {channel};
  return repeatability_over(groups, one);
}

RepeatabilityResult repeatability(std::span<const TrialGroup> groups, ChannelGroup group) {
  return repeatability_over(groups, channels_of(group));
}

std::vector<TrialGroup> extract_trial_groups(std::span<const ProbeSample> samples,
                                             const PredictionSet& predictions) {
  require_predictions(predictions, samples);
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const ProbeSample*>> buckets;
  for (const auto& s : samples) buckets[{s.point_id, s.depth_step}].push_back(&s);

  std::vector<TrialGroup> groups;
  groups.reserve(buckets.size());
  for (auto& [key, members] : buckets) {
    std::sort(members.begin(), members.end(), [](const ProbeSample* a, const ProbeSample* b) {
      return a->trial_id < b->trial_id || (a->trial_id == b->trial_id && a->sample_id < b->sample_id);
    });
    TrialGroup g;
    g.point_id = key.first;
    g.depth_step = key.second;
    for (const auto* s : members) g.trials.push_back(*predictions.find(s->sample_id));
    groups.push_back(std::move(g));
  }
  return groups;
}

double feature_repeatability(std::span<const ProbeSample> samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptySet, "no samples");
  const std::size_t dim = samples.front().features.size();
  if (dim == 0) throw Error(ErrorKind::NoFeatures, "samples carry no feature vectors");
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const ProbeSample*>> buckets;
  for (const auto& s : samples) buckets[{s.point_id, s.depth_step}].push_back(&s);

  double total = 0.0;
  std::vector<double> values;
  for (const auto& [key, members] : buckets) {
    if (members.size() < 2) {
      throw Error(ErrorKind::InsufficientTrials, "a (point, depth) group has fewer than two trials");
    }
    values.resize(members.size());
    double group_std = 0.0;
    for (std::size_t f = 0; f < dim; ++f) {
      for (std::size_t r = 0; r < members.size(); ++r) values[r] = members[r]->features[f];
      group_std += sample_std(values);
    }
    total += group_std / static_cast<double>(dim);
  }
  return total / static_cast<double>(buckets.size());
}

RepeatabilityReport repeatability_report(std::span<const TrialGroup> groups,
                                         const SensorManifest& manifest) {
  RepeatabilityReport report;
  report.depth_step_mm = manifest.depth_step_mm;
  for (ChannelGroup g : kAllGroups) {
    if (!manifest.supports(g)) continue;
    for (Channel c : channels_of(g)) report.channels.emplace(c, repeatability(groups, c));
    report.groups.emplace(g, repeatability(groups, g));
  }
  return report;
}

std::string format_repeatability(const RepeatabilityReport& report) {
  std::ostringstream out;
  out << "channel,rep_value\n";
  for (const auto& [c, r] : report.channels) {
    out << to_string(c) << ',' << detail::format_double(r.rep) << '\n';
  }
  for (const auto& [g, r] : report.groups) {
    out << to_string(g) << ',' << detail::format_double(r.rep) << '\n';
  }
  return out.str();
}

std::string format_depth_curves(const RepeatabilityReport& report) {
  std::ostringstream out;
  out << "channel,depth_step,mean_std\n";
  for (const auto& [c, r] : report.channels) {
    for (const auto& [d, v] : r.depth_curve) {
      out << to_string(c) << ',' << d << ',' << detail::format_double(v) << '\n';
    }
  }
  for (const auto& [g, r] : report.groups) {
    for (const auto& [d, v] : r.depth_curve) {
      out << to_string(g) << ',' << d << ',' << detail::format_double(v) << '\n';
    }
  }
  return out.str();
}

}  // namespace tacbench
