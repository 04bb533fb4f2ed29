#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

/// |i_c/i_o - 1| / (|i_c/i_o - 1| + |mae_c/mae_o - 1|), in [0, 1].
/// Throws BaselineZero (mae_o or i_o is zero), UndefinedRobustness (both
/// ratios are exactly 1) or InvalidArgument (negative input).
double light_robustness(double mae_o, double mae_c, double i_o, double i_c);

/// Mean grayscale intensity of a scene. Throws EmptySet.
double mean_intensity(std::span<const ProbeSample> samples);

/// Per-group MAE of a predictor under one lighting scene.
struct SceneEvaluation {
  std::string scene_id;
  double intensity = 0.0;
  std::map<ChannelGroup, double> mae;
};

struct LightCell {
  double mae_baseline = 0.0;
  double mae_scene = 0.0;
  double intensity_baseline = 0.0;
  double intensity_scene = 0.0;
  double degradation_pct = 0.0;   ///< |mae_c / mae_o - 1| * 100
  std::optional<double> r_light;  ///< nullopt marks the undefined 0/0 case

  bool operator==(const LightCell&) const = default;
};

struct LightRow {
  std::string scene_id;
  std::map<ChannelGroup, LightCell> cells;

  bool operator==(const LightRow&) const = default;
};

struct LightMean {
  double degradation_pct = 0.0;
  std::optional<double> r_light;  ///< mean over defined cells; nullopt if none

  bool operator==(const LightMean&) const = default;
};

struct LightReport {
  std::string baseline_scene;
  std::vector<LightRow> rows;
  std::map<ChannelGroup, LightMean> mean;
  /// Opaque sensor: not evaluated, robustness nominally 1.
  bool excluded_opaque = false;

  bool operator==(const LightReport&) const = default;
};

/// Cells for every group present in the baseline. Every scene must cover the
/// same groups (InvalidArgument otherwise); BaselineZero propagates.
LightReport light_report(const SceneEvaluation& baseline, std::span<const SceneEvaluation> scenes);

/// Placeholder report for sensors whose skin blocks ambient light.
LightReport opaque_light_report();

/// light_report.csv: scene_id,group,mae_baseline,mae_scene,intensity_baseline,
/// intensity_scene,degradation_pct,r_light (UNDEFINED for the 0/0 case)
std::string format_light_report(const LightReport& report);

/// N repeated outputs at one (point, depth step).
struct TrialGroup {
  std::int64_t point_id = 0;
  std::int64_t depth_step = 0;
  std::vector<Label6> trials;
};

struct RepeatabilityResult {
  double rep = 0.0;
  std::map<std::int64_t, double> depth_curve;  ///< mean STD per depth step
  std::size_t group_count = 0;
  std::size_t trials_per_group = 0;

  bool operator==(const RepeatabilityResult&) const = default;
};

/// Mean over groups of the sample STD across trials. For a channel group the
/// per-group STD is averaged over its channels. Every group needs the same
/// N >= 2 trials and every depth step the same number of groups.
/// Throws InsufficientTrials, RaggedGroups or EmptySet.
RepeatabilityResult repeatability(std::span<const TrialGroup> groups, Channel channel);
RepeatabilityResult repeatability(std::span<const TrialGroup> groups, ChannelGroup group);

/// Groups samples by (point_id, depth_step), trials ordered by trial_id, using
/// the predicted outputs. Throws MissingPrediction.
std::vector<TrialGroup> extract_trial_groups(std::span<const ProbeSample> samples,
                                             const PredictionSet& predictions);

/// Diagnostic on raw features: mean over (point, depth) groups and feature
/// dimensions of the STD across trials. Throws NoFeatures / InsufficientTrials.
double feature_repeatability(std::span<const ProbeSample> samples);

struct RepeatabilityReport {
  std::map<Channel, RepeatabilityResult> channels;
  std::map<ChannelGroup, RepeatabilityResult> groups;
  double depth_step_mm = 0.1;
};

/// Groups supported by the manifest and each of their channels.
RepeatabilityReport repeatability_report(std::span<const TrialGroup> groups,
                                         const SensorManifest& manifest);

/// repeatability.csv: channel,rep_value (channels, then groups)
std::string format_repeatability(const RepeatabilityReport& report);
/// rep_depth_curve.csv: channel,depth_step,mean_std
std::string format_depth_curves(const RepeatabilityReport& report);

}  // namespace tacbench
