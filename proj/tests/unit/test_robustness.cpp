#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "builders.hpp"
#include "oracle_checks.hpp"
#include "tacbench/error.hpp"
#include "tacbench/robustness.hpp"

namespace tb = tacbench;

namespace {

tb::ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const tb::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no tacbench::Error thrown";
  return tb::ErrorKind::InvalidArgument;
}

tb::TrialGroup group(std::int64_t point, std::int64_t depth, std::vector<double> px) {
  tb::TrialGroup g;
  g.point_id = point;
  g.depth_step = depth;
  for (double v : px) {
    tb::Label6 l{};
    l[0] = v;
    l[1] = 2.0 * v;
    g.trials.push_back(l);
  }
  return g;
}

}  // namespace

TEST(LightRobustness, ClosedFormAndOracle) {
  EXPECT_EQ(tb::light_robustness(1.0, 10.0, 1.0, 7.0), 0.4);
  EXPECT_EQ(tb::light_robustness(1.0, 1.0, 1.0, 2.0), 1.0);
  EXPECT_EQ(tb::light_robustness(1.0, 2.0, 1.0, 1.0), 0.0);
  EXPECT_EQ(oracle_checks::r_light(500, 8), "");
}

TEST(LightRobustness, TypedFailures) {
  EXPECT_EQ(kind_of([] { (void)tb::light_robustness(0.0, 1.0, 1.0, 2.0); }), tb::ErrorKind::BaselineZero);
  EXPECT_EQ(kind_of([] { (void)tb::light_robustness(1.0, 1.0, 0.0, 2.0); }), tb::ErrorKind::BaselineZero);
  EXPECT_EQ(kind_of([] { (void)tb::light_robustness(1.0, 1.0, 5.0, 5.0); }),
            tb::ErrorKind::UndefinedRobustness);
  EXPECT_EQ(kind_of([] { (void)tb::light_robustness(-1.0, 1.0, 5.0, 6.0); }), tb::ErrorKind::InvalidArgument);
}

TEST(LightReport, CellsMeansAndUndefined) {
  tb::SceneEvaluation base{"S0", 20.0, {{tb::ChannelGroup::Fz, 0.1}, {tb::ChannelGroup::Pz, 0.2}}};
  std::vector<tb::SceneEvaluation> scenes{
      {"S1", 140.0, {{tb::ChannelGroup::Fz, 1.0}, {tb::ChannelGroup::Pz, 0.2}}},
      {"S2", 20.0, {{tb::ChannelGroup::Fz, 0.1}, {tb::ChannelGroup::Pz, 0.3}}}};
  auto r = tb::light_report(base, scenes);
  ASSERT_EQ(r.rows.size(), 2u);
  const auto& fz1 = r.rows[0].cells.at(tb::ChannelGroup::Fz);
  EXPECT_DOUBLE_EQ(*fz1.r_light, 0.4);
  EXPECT_NEAR(fz1.degradation_pct, 900.0, 1e-9);
  EXPECT_FALSE(r.rows[1].cells.at(tb::ChannelGroup::Fz).r_light.has_value());
  EXPECT_DOUBLE_EQ(*r.mean.at(tb::ChannelGroup::Fz).r_light, 0.4);
  EXPECT_NEAR(r.mean.at(tb::ChannelGroup::Pz).degradation_pct, 25.0, 1e-9);
  EXPECT_NE(tb::format_light_report(r).find("UNDEFINED"), std::string::npos);
}

TEST(LightReport, MismatchedGroupsRejected) {
  tb::SceneEvaluation base{"S0", 20.0, {{tb::ChannelGroup::Fz, 0.1}}};
  std::vector<tb::SceneEvaluation> scenes{{"S1", 30.0, {{tb::ChannelGroup::Pz, 0.1}}}};
  EXPECT_THROW((void)tb::light_report(base, scenes), tb::Error);
}

TEST(LightReport, OpaqueIsFlagged) {
  auto r = tb::opaque_light_report();
  EXPECT_TRUE(r.excluded_opaque);
  EXPECT_TRUE(r.rows.empty());
}

TEST(MeanIntensity, AveragesSamples) {
  auto rows = testing_support::line_samples(3);
  rows[0].intensity = 10.0;
  rows[1].intensity = 20.0;
  rows[2].intensity = 60.0;
  EXPECT_DOUBLE_EQ(tb::mean_intensity(rows), 30.0);
  EXPECT_THROW((void)tb::mean_intensity(std::span<const tb::ProbeSample>{}), tb::Error);
}

TEST(Repeatability, ClosedFormAndOracle) {
  std::vector<tb::TrialGroup> groups{group(0, 1, {1.0, 3.0}), group(1, 1, {2.0, 2.0})};
  auto r = tb::repeatability(groups, tb::Channel::Px);
  EXPECT_NEAR(r.rep, 0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(r.group_count, 2u);
  EXPECT_EQ(r.trials_per_group, 2u);
  EXPECT_NEAR(r.depth_curve.at(1), r.rep, 1e-15);
  auto g = tb::repeatability(groups, tb::ChannelGroup::Pxy);
  EXPECT_NEAR(g.rep, 0.5 * (r.rep + 2.0 * r.rep), 1e-15);
  EXPECT_EQ(oracle_checks::rep(200, 9), "");
}

TEST(Repeatability, ConstantTrialsGiveZero) {
  std::vector<tb::TrialGroup> groups{group(0, 0, {1.0, 1.0, 1.0})};
  EXPECT_EQ(tb::repeatability(groups, tb::Channel::Px).rep, 0.0);
}

TEST(Repeatability, ShapeErrors) {
  std::vector<tb::TrialGroup> one_trial{group(0, 0, {1.0})};
  EXPECT_EQ(kind_of([&] { (void)tb::repeatability(one_trial, tb::Channel::Px); }),
            tb::ErrorKind::InsufficientTrials);
  std::vector<tb::TrialGroup> ragged{group(0, 0, {1.0, 2.0}), group(1, 0, {1.0, 2.0, 3.0})};
  EXPECT_EQ(kind_of([&] { (void)tb::repeatability(ragged, tb::Channel::Px); }), tb::ErrorKind::RaggedGroups);
  std::vector<tb::TrialGroup> uneven{group(0, 0, {1.0, 2.0}), group(1, 0, {1.0, 2.0}), group(0, 1, {1.0, 2.0})};
  EXPECT_EQ(kind_of([&] { (void)tb::repeatability(uneven, tb::Channel::Px); }), tb::ErrorKind::RaggedGroups);
  EXPECT_EQ(kind_of([] { (void)tb::repeatability(std::span<const tb::TrialGroup>{}, tb::Channel::Px); }),
            tb::ErrorKind::EmptySet);
}

TEST(Repeatability, ExtractGroupsOrdersTrials) {
  std::vector<tb::ProbeSample> rows;
  tb::PredictionSet preds;
  std::uint64_t id = 1;
  for (std::int64_t trial : {2, 0, 1}) {
    auto s = testing_support::sample(id, 0, 0, 0.5, 1.0);
    s.point_id = 4;
    s.depth_step = 3;
    s.trial_id = trial;
    tb::Label6 p{};
    p[0] = static_cast<double>(trial);
    preds.insert(id, p);
    rows.push_back(s);
    ++id;
  }
  auto groups = tb::extract_trial_groups(rows, preds);
  ASSERT_EQ(groups.size(), 1u);
  ASSERT_EQ(groups[0].trials.size(), 3u);
  EXPECT_EQ(groups[0].trials[0][0], 0.0);
  EXPECT_EQ(groups[0].trials[2][0], 2.0);
}

TEST(Repeatability, ReportCoversChannelsAndSupportedGroups) {
  std::vector<tb::TrialGroup> groups{group(0, 1, {1.0, 3.0}), group(1, 1, {2.0, 2.5})};
  auto m = testing_support::small_manifest();
  m.channels_supported = {tb::ChannelGroup::Pxy};
  auto r = tb::repeatability_report(groups, m);
  ASSERT_EQ(r.channels.size(), 2u);
  EXPECT_TRUE(r.channels.count(tb::Channel::Py));
  EXPECT_EQ(r.groups.size(), 1u);
  EXPECT_NE(tb::format_repeatability(r).find("Pxy"), std::string::npos);
  EXPECT_NE(tb::format_depth_curves(r).find("Px,1,"), std::string::npos);
}
