#include <gtest/gtest.h>

#include <cmath>

#include "builders.hpp"
#include "oracle_checks.hpp"
#include "oracles.hpp"
#include "tacbench/error.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/spatial.hpp"

namespace tb = tacbench;
using testing_support::sample;

namespace {

tb::BinSeries series_of(std::vector<double> means) {
  tb::BinSeries s;
  for (std::size_t i = 0; i < means.size(); ++i) {
    s.bin_index.push_back(i);
    s.counts.push_back(1);
  }
  s.means = std::move(means);
  return s;
}

}  // namespace

TEST(Sensitivity, ThresholdExcludesLightContacts) {
  EXPECT_FALSE(tb::sensitivity(sample(1, 0, 0, 1.0, 0.01)).has_value());
  EXPECT_DOUBLE_EQ(*tb::sensitivity(sample(1, 0, 0, 1.0, 0.5)), 2.0);
  EXPECT_DOUBLE_EQ(*tb::sensitivity(sample(1, 0, 0, 1.0, -0.5)), 2.0);
}

TEST(Sensitivity, MapBinsAndQualifies) {
  auto m = testing_support::small_manifest();
  std::vector<tb::ProbeSample> rows;
  std::uint64_t id = 1;
  for (int k = 0; k < 3; ++k) rows.push_back(sample(id++, 0.5, 0.5, 1.0, 0.5));
  for (int k = 0; k < 3; ++k) rows.push_back(sample(id++, -5.5, 2.5, 1.0, 0.25));
  rows.push_back(sample(id++, 8.5, -0.5, 1.0, 1.0));
  rows.push_back(sample(id++, 8.5, -0.5, 1.0, 0.001));
  auto map = tb::sensitivity_map(rows, m);
  EXPECT_DOUBLE_EQ(map.cell_mm, 1.0);
  EXPECT_EQ(map.bins_per_axis, 20u);
  EXPECT_EQ(map.bins.size(), 3u);
  EXPECT_EQ(map.included_samples, 7u);
  EXPECT_EQ(map.excluded_samples, 1u);
  auto q = map.qualifying_means();
  ASSERT_EQ(q.size(), 2u);
  ASSERT_TRUE(map.mean_mu.has_value());
  EXPECT_DOUBLE_EQ(*map.mean_mu, 3.0);
  EXPECT_NEAR(*map.uniformity_u, oracle::uniformity({2.0, 4.0}), 1e-15);
  for (std::size_t i = 1; i < map.bins.size(); ++i) {
    auto a = std::make_pair(map.bins[i - 1].iy, map.bins[i - 1].ix);
    auto b = std::make_pair(map.bins[i].iy, map.bins[i].ix);
    EXPECT_LT(a, b);
  }
  EXPECT_EQ(map.bin_edges_x().size(), 21u);
}

TEST(Sensitivity, NoIncludedSamples) {
  std::vector<tb::ProbeSample> rows{sample(1, 0, 0, 1.0, 0.0)};
  try {
    (void)tb::sensitivity_map(rows, testing_support::small_manifest());
    FAIL();
  } catch (const tb::Error& e) {
    EXPECT_EQ(e.kind(), tb::ErrorKind::NoIncludedSamples);
  }
}

TEST(Uniformity, ClosedFormAndErrors) {
  std::vector<double> v{4.0, 6.0};
  EXPECT_NEAR(tb::uniformity(v), 1.0 / (1.0 + std::sqrt(2.0) / 5.0), 1e-12);
  std::vector<double> flat{3.0, 3.0, 3.0};
  EXPECT_EQ(tb::uniformity(flat), 1.0);
  std::vector<double> one{1.0};
  EXPECT_THROW((void)tb::uniformity(one), tb::Error);
  std::vector<double> zero{-1.0, 1.0};
  EXPECT_THROW((void)tb::uniformity(zero), tb::Error);
  EXPECT_EQ(oracle_checks::uniformity(200, 6), "");
}

TEST(Uniformity, ScaleInvariant) {
  std::vector<double> a{1.0, 2.0, 3.5};
  std::vector<double> b{7.0, 14.0, 24.5};
  EXPECT_NEAR(tb::uniformity(a), tb::uniformity(b), 1e-14);
}

TEST(Binning, CountsAndEdges) {
  EXPECT_EQ(tb::bin_count(0.01), 100u);
  EXPECT_EQ(tb::bin_count(0.3), 4u);
  EXPECT_EQ(tb::bin_of(1.0, 0.01), 99u);
  EXPECT_EQ(tb::bin_of(0.0, 0.01), 0u);
  EXPECT_EQ(tb::bin_of(0.015, 0.01), 1u);
  EXPECT_THROW((void)tb::bin_count(0.0), tb::Error);
  EXPECT_THROW((void)tb::bin_count(1.5), tb::Error);
}

TEST(RollingMean, TruncatesAtEnds) {
  auto s = tb::rolling_mean(series_of({0.0, 3.0, 0.0}), 3);
  EXPECT_DOUBLE_EQ(s.means[0], 1.5);
  EXPECT_DOUBLE_EQ(s.means[1], 1.0);
  EXPECT_DOUBLE_EQ(s.means[2], 1.5);
  EXPECT_THROW((void)tb::rolling_mean(s, 4), tb::Error);
  EXPECT_THROW((void)tb::rolling_mean(s, 0), tb::Error);
}

TEST(RollingMean, WindowOneIsIdentityAndPeriodicInteriorIsFlat) {
  auto base = series_of({1, 5, 2, 1, 5, 2, 1, 5, 2, 1, 5, 2});
  EXPECT_EQ(tb::rolling_mean(base, 1).means, base.means);
  auto periodic = series_of({1, 5, 3, 1, 5, 3, 1, 5, 3, 1, 5, 3, 1, 5, 3});
  auto s = tb::rolling_mean(periodic, 3);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) EXPECT_NEAR(s.means[i], 3.0, 1e-12);
}

TEST(RollingMean, MatchesOracle) {
  std::vector<double> v{0.3, 0.1, 0.9, 0.4, 0.4, 0.2, 0.8, 0.5};
  for (std::size_t w : {1u, 3u, 5u, 7u, 9u}) {
    auto s = tb::rolling_mean(series_of(v), w);
    auto o = oracle::smooth(v, static_cast<int>(w));
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(s.means[i], o[i], 1e-15);
  }
}

TEST(SpatialRobustness, MatchesOracleAndIsTranslationInvariant) {
  EXPECT_EQ(oracle_checks::r_spatial(200, 7), "");
  auto d = series_of({0.1, 0.3, 0.2, 0.6, 0.4});
  auto z = series_of({0.5, 0.5, 0.7, 0.1, 0.2});
  auto d2 = d, z2 = z;
  for (auto& v : d2.means) v += 3.0;
  for (auto& v : z2.means) v += 3.0;
  EXPECT_NEAR(tb::spatial_robustness(d, z, 3), tb::spatial_robustness(d2, z2, 3), 1e-12);
  auto flat = series_of({0.2, 0.2, 0.2});
  EXPECT_NEAR(tb::spatial_robustness(flat, flat, 1), 0.0, 1e-15);
  auto single = series_of({0.2});
  EXPECT_THROW((void)tb::spatial_robustness(single, flat, 1), tb::Error);
}

TEST(SpatialRobustness, PermutationInvariantWithoutSmoothing) {
  auto d = series_of({0.1, 0.3, 0.2, 0.6, 0.4});
  auto z = series_of({0.5, 0.5, 0.7, 0.1, 0.2});
  auto dp = series_of({0.6, 0.1, 0.4, 0.3, 0.2});
  EXPECT_NEAR(tb::spatial_robustness(d, z, 1), tb::spatial_robustness(dp, z, 1), 1e-15);
}

TEST(BinnedErrors, ReconcileWithGlobalMae) {
  auto m = testing_support::small_manifest();
  auto rows = testing_support::line_samples(200);
  tb::PredictionSet preds;
  for (const auto& r : rows) {
    auto p = r.label;
    for (std::size_t c = 0; c < 6; ++c) p[c] += 0.01 * static_cast<double>((r.sample_id * (c + 3)) % 7);
    preds.insert(r.sample_id, p);
  }
  for (auto g : tb::kAllGroups) {
    const double global = tb::mae(tb::group_series(rows, preds, g, std::nullopt));
    for (auto axis : {tb::BinAxis::RadialDistance, tb::BinAxis::NormalizedDepth}) {
      auto s = tb::binned_errors(rows, preds, m, axis, g);
      double total = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        total += s.means[i] * static_cast<double>(s.counts[i]);
        n += s.counts[i];
      }
      EXPECT_EQ(n, rows.size());
      EXPECT_NEAR(total / static_cast<double>(n), global, 1e-12);
    }
  }
}

TEST(BinnedErrors, CsvRoundTrip) {
  auto m = testing_support::small_manifest();
  auto rows = testing_support::line_samples(50);
  tb::PredictionSet preds;
  for (const auto& r : rows) {
    auto p = r.label;
    p[2] += 0.1 * static_cast<double>(r.sample_id % 3);
    preds.insert(r.sample_id, p);
  }
  auto s = tb::binned_errors(rows, preds, m, tb::BinAxis::NormalizedDepth, tb::ChannelGroup::Pz);
  auto text = tb::format_bin_series(s, 5);
  auto back = tb::parse_bin_series(text, tb::BinAxis::NormalizedDepth, s.bin_width);
  EXPECT_EQ(back.bin_index, s.bin_index);
  EXPECT_EQ(back.counts, s.counts);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(back.means[i], s.means[i], 1e-12);
}

TEST(SpatialReport, SkipsUnsupportedGroups) {
  auto m = testing_support::small_manifest();
  m.channels_supported = {tb::ChannelGroup::Pxy, tb::ChannelGroup::Pz};
  auto rows = testing_support::line_samples(50);
  tb::PredictionSet preds;
  for (const auto& r : rows) {
    auto p = r.label;
    p[0] += 0.01 * static_cast<double>(r.sample_id % 5);
    p[2] += 0.02 * static_cast<double>(r.sample_id % 3);
    preds.insert(r.sample_id, p);
  }
  auto rep = tb::spatial_report(rows, preds, m, std::nullopt);
  EXPECT_EQ(rep.groups.size(), 2u);
  EXPECT_TRUE(rep.groups.count(tb::ChannelGroup::Pz));
  EXPECT_GT(rep.groups.at(tb::ChannelGroup::Pz).r_spatial, 0.0);
}
