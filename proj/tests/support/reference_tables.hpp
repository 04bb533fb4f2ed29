#pragma once

// Published benchmark numbers for four commercial/research tactile sensors and
// builders that turn them into residual, bin and trial fixtures.

#include <string>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/report.hpp"
#include "tacbench/robustness.hpp"
#include "tacbench/sr_curve.hpp"

namespace reference {

struct IntrinsicRow {
  std::string sensor;
  double camera_mp;
  double thickness_mm;
  double fov_mm2;
  double fps;
  bool opaque;
};

/// A printed value and the number of decimals it was printed with.
struct Printed {
  double value;
  int decimals;

  [[nodiscard]] double unit() const;
  [[nodiscard]] bool matches(double computed) const;
};

struct RegressionRow {
  std::string sensor;
  tacbench::ChannelGroup group;
  Printed mae;
  Printed r2;
  Printed smape;  ///< printed as a fraction
  bool bold_mae, bold_r2, bold_smape;
};

struct SpatialRow {
  std::string sensor;
  tacbench::ChannelGroup group;
  Printed r_spatial;
  bool bold;
};

struct LightCellRow {
  std::string sensor;
  std::string scene;  ///< S1..S4, or "Mean"
  tacbench::ChannelGroup group;
  Printed degradation_pct;
  bool bold;
};

struct RepRow {
  std::string sensor;
  tacbench::ChannelGroup group;
  Printed rep;
  bool bold;
};

struct SrRow {
  std::string sensor;
  double sr_005;
};

const std::vector<IntrinsicRow>& intrinsic_rows();
const std::vector<RegressionRow>& regression_rows();
const std::vector<SpatialRow>& spatial_rows();
const std::vector<LightCellRow>& light_rows();
const std::vector<RepRow>& rep_rows();
const std::vector<SrRow>& sr_rows();

tacbench::SensorManifest manifest_for(const std::string& sensor);

struct ResidualFixture {
  std::vector<tacbench::ProbeSample> samples;
  tacbench::PredictionSet predictions;
};

/// Truth/prediction pairs whose per-group MAE, R^2 and sMAPE equal the rows of
/// one sensor (raw units).
ResidualFixture regression_fixture(const std::string& sensor);

/// Samples on a 100 x 100 grid of (radial distance, depth) bins whose errors
/// make R_spatial of each group equal the sensor's row.
struct SpatialFixture {
  tacbench::SensorManifest manifest;
  std::vector<tacbench::ProbeSample> samples;
  tacbench::PredictionSet predictions;
};
SpatialFixture spatial_fixture(const std::string& sensor);

/// Baseline plus four scenes whose MAE changes by the printed percentages.
struct LightFixture {
  tacbench::SceneEvaluation baseline;
  std::vector<tacbench::SceneEvaluation> scenes;
};
LightFixture light_fixture(const std::string& sensor);

/// Trial groups whose per-group repeatability equals the sensor's row.
std::vector<tacbench::TrialGroup> rep_fixture(const std::string& sensor);

/// 1000 resolution pairs with the sensor's SR(0.05).
std::vector<tacbench::SRPair> sr_fixture(const std::string& sensor);

/// Report assembled from all fixtures of one sensor.
tacbench::EvalReport report_fixture(const std::string& sensor);

}  // namespace reference
