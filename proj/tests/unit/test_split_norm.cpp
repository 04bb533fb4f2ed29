#include <gtest/gtest.h>

#include <set>

#include "builders.hpp"
#include "tacbench/error.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/split.hpp"
#include "temp_dir.hpp"

namespace tb = tacbench;

namespace {

tb::SensorDataset line_dataset(std::size_t n) {
  return tb::SensorDataset::build(testing_support::small_manifest(), testing_support::line_samples(n));
}

}  // namespace

TEST(Split, TargetsRoundTrainAndValTestTakesRest) {
  auto t = tb::split_targets(10, {});
  EXPECT_EQ(t[0], 7u);
  EXPECT_EQ(t[1], 2u);
  EXPECT_EQ(t[2], 1u);
  auto u = tb::split_targets(8000, {});
  EXPECT_EQ(u[0] + u[1] + u[2], 8000u);
}

TEST(Split, ExhaustiveDisjointAndSeeded) {
  auto ds = line_dataset(100);
  auto a = tb::split_dataset(ds, {}, 5);
  auto b = tb::split_dataset(ds, {}, 5);
  auto c = tb::split_dataset(ds, {}, 6);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.assignment, c.assignment);
  EXPECT_EQ(a.assignment.size(), 100u);
  auto counts = a.counts();
  EXPECT_EQ(counts[0], 70u);
  EXPECT_EQ(counts[1], 20u);
  EXPECT_EQ(counts[2], 10u);
  tb::check_split_covers(a, ds);
}

TEST(Split, GroupByPointKeepsPointsTogether) {
  auto rows = testing_support::line_samples(60);
  for (auto& r : rows) {
    r.trial_id = static_cast<std::int64_t>(r.sample_id % 3);
    r.point_id = static_cast<std::int64_t>((r.sample_id - 1) / 3);
  }
  auto ds = tb::SensorDataset::build(testing_support::small_manifest(), rows);
  auto split = tb::split_dataset(ds, {}, 1, true);
  std::map<std::int64_t, std::set<tb::Split>> per_point;
  for (const auto& s : ds.samples()) per_point[s.point_id].insert(*split.find(s.sample_id));
  for (const auto& [pid, splits] : per_point) EXPECT_EQ(splits.size(), 1u) << "point " << pid;
}

TEST(Split, TooFewSamplesIsEmptySplit) {
  auto ds = line_dataset(2);
  EXPECT_THROW((void)tb::split_dataset(ds, {}, 1), tb::Error);
}

TEST(Split, FileRoundTripAndCoverageCheck) {
  testing_support::TempDir dir("split");
  auto ds = line_dataset(30);
  auto split = tb::split_dataset(ds, {}, 9);
  tb::save_split(split, dir / "split.csv");
  auto back = tb::load_split(dir / "split.csv");
  EXPECT_EQ(back.assignment, split.assignment);
  back.assignment.erase(back.assignment.begin());
  EXPECT_THROW(tb::check_split_covers(back, ds), tb::Error);
}

TEST(Norm, FitUsesTrainOnlyAndRoundTrips) {
  auto ds = line_dataset(50);
  auto split = tb::split_dataset(ds, {}, 2);
  auto norm = tb::fit_minmax(ds, split);
  double lo = 1e9, hi = -1e9;
  for (auto id : split.ids(tb::Split::Train)) {
    lo = std::min(lo, ds.at(id).label[0]);
    hi = std::max(hi, ds.at(id).label[0]);
  }
  EXPECT_DOUBLE_EQ(norm.ranges[0].min, lo);
  EXPECT_DOUBLE_EQ(norm.ranges[0].max, hi);
  for (const auto& s : ds.samples()) {
    auto back = tb::denormalize(tb::normalize(s.label, norm), norm);
    for (std::size_t c = 0; c < 6; ++c) EXPECT_NEAR(back[c], s.label[c], 1e-12);
  }
  EXPECT_EQ(tb::norm_params_from_json_text(tb::norm_params_to_json_text(norm)), norm);
}

TEST(Norm, ConstantChannelIsDegenerate) {
  auto rows = testing_support::line_samples(20);
  for (auto& r : rows) r.label[4] = 0.0;
  auto ds = tb::SensorDataset::build(testing_support::small_manifest(), rows);
  auto split = tb::split_dataset(ds, {}, 1);
  try {
    (void)tb::fit_minmax(ds, split);
    FAIL() << "expected DegenerateChannel";
  } catch (const tb::Error& e) {
    EXPECT_EQ(e.kind(), tb::ErrorKind::DegenerateChannel);
  }
}

TEST(Norm, IdentityLeavesValuesUnchanged) {
  tb::Label6 v{1, -2, 3, 4.5, 0, 7};
  EXPECT_EQ(tb::normalize(v, tb::NormParams::identity()), v);
}
