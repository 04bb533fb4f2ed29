#include <gtest/gtest.h>

#include "reference_tables.hpp"
#include "tacbench/error.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/robustness.hpp"
#include "tacbench/spatial.hpp"

namespace tb = tacbench;

TEST(ReferenceTables, RegressionRowsReproduce) {
  for (const auto& sensor : {"ViTacTip", "MagicTac", "GelSight", "GelSightWM"}) {
    auto f = reference::regression_fixture(sensor);
    auto report = tb::channel_report(f.samples, f.predictions, std::nullopt);
    for (const auto& row : reference::regression_rows()) {
      if (row.sensor != sensor) continue;
      const auto& got = report.groups.at(row.group);
      EXPECT_TRUE(row.mae.matches(got.mae)) << sensor << " " << tb::to_string(row.group) << " " << got.mae;
      EXPECT_TRUE(row.r2.matches(got.r2)) << sensor << " " << tb::to_string(row.group) << " " << got.r2;
      EXPECT_TRUE(row.smape.matches(got.smape / 100.0))
          << sensor << " " << tb::to_string(row.group) << " " << got.smape;
    }
  }
}

TEST(ReferenceTables, SpatialRowsReproduce) {
  for (const auto& sensor : {"ViTacTip", "MagicTac", "GelSight", "GelSightWM"}) {
    auto f = reference::spatial_fixture(sensor);
    for (const auto& row : reference::spatial_rows()) {
      if (row.sensor != sensor) continue;
      auto d = tb::binned_errors(f.samples, f.predictions, f.manifest, tb::BinAxis::RadialDistance, row.group);
      auto z = tb::binned_errors(f.samples, f.predictions, f.manifest, tb::BinAxis::NormalizedDepth, row.group);
      EXPECT_EQ(d.size(), 100u);
      EXPECT_EQ(z.size(), 100u);
      const double r = tb::spatial_robustness(d, z, 5);
      EXPECT_TRUE(row.r_spatial.matches(r)) << sensor << " " << tb::to_string(row.group) << " " << r;
    }
  }
}

TEST(ReferenceTables, LightRowsReproduce) {
  for (const auto& sensor : {"ViTacTip", "MagicTac"}) {
    auto f = reference::light_fixture(sensor);
    auto report = tb::light_report(f.baseline, f.scenes);
    for (const auto& row : reference::light_rows()) {
      if (row.sensor != sensor) continue;
      double got = 0.0;
      if (row.scene == "Mean") {
        got = report.mean.at(row.group).degradation_pct;
      } else {
        for (const auto& r : report.rows) {
          if (r.scene_id == row.scene) got = r.cells.at(row.group).degradation_pct;
        }
      }
      EXPECT_TRUE(row.degradation_pct.matches(got))
          << sensor << " " << row.scene << " " << tb::to_string(row.group) << " " << got;
    }
  }
}

TEST(ReferenceTables, RepRowsReproduce) {
  for (const auto& sensor : {"ViTacTip", "MagicTac", "GelSight"}) {
    auto groups = reference::rep_fixture(sensor);
    for (const auto& row : reference::rep_rows()) {
      if (row.sensor != sensor) continue;
      const double got = tb::repeatability(groups, row.group).rep;
      EXPECT_TRUE(row.rep.matches(got)) << sensor << " " << tb::to_string(row.group) << " " << got;
    }
  }
}

TEST(ReferenceTables, SrRowsReproduce) {
  for (const auto& row : reference::sr_rows()) {
    auto pairs = reference::sr_fixture(row.sensor);
    std::vector<double> t{0.05};
    EXPECT_DOUBLE_EQ(tb::sr_curve(pairs, t).at(0.05), row.sr_005);
  }
}
