#include <gtest/gtest.h>

#include <functional>

#include "builders.hpp"
#include "tacbench/error.hpp"
#include "tacbench/dataset.hpp"
#include "temp_dir.hpp"

namespace tb = tacbench;
using testing_support::sample;
using testing_support::small_manifest;

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

}  // namespace

TEST(Manifest, JsonRoundTrip) {
  auto m = small_manifest();
  m.opaque = true;
  m.channels_supported = {tb::ChannelGroup::Pxy, tb::ChannelGroup::Pz};
  m.center_x_mm = -1.5;
  auto back = tb::manifest_from_json_text(tb::manifest_to_json_text(m));
  EXPECT_EQ(back, m);
  EXPECT_TRUE(back.supports(tb::ChannelGroup::Pz));
  EXPECT_FALSE(back.supports(tb::ChannelGroup::Fz));
}

TEST(Manifest, MissingKeyIsSchemaError) {
  EXPECT_EQ(kind_of([] { (void)tb::manifest_from_json_text(R"({"sensor_name":"a"})"); }),
            tb::ErrorKind::SchemaError);
}

TEST(Manifest, NonPositiveLimitIsInvalid) {
  auto m = small_manifest();
  m.max_radius_mm = 0.0;
  EXPECT_EQ(kind_of([&] { m.validate(); }), tb::ErrorKind::InvalidValue);
}

TEST(Dataset, LenientBuildDropsBadRowsAndReportsThem) {
  std::vector<tb::ProbeSample> rows{sample(1, 0, 0, 0.5, 1.0), sample(2, 0, 0, 3.0, 1.0),
                                    sample(3, 0, 0, 0.5, 9.0), sample(1, 1, 1, 0.5, 1.0),
                                    sample(4, 0, 0, -0.1, 1.0)};
  auto ds = tb::SensorDataset::build(small_manifest(), rows);
  ASSERT_EQ(ds.size(), 1u);
  ASSERT_EQ(ds.issues().size(), 4u);
  EXPECT_EQ(ds.issues()[0].kind, tb::ErrorKind::SafeLimitViolation);
  EXPECT_EQ(ds.issues()[1].kind, tb::ErrorKind::SafeLimitViolation);
  EXPECT_EQ(ds.issues()[2].kind, tb::ErrorKind::DuplicateSampleId);
  EXPECT_EQ(ds.issues()[3].kind, tb::ErrorKind::InvalidValue);
  EXPECT_THROW(ds.require_valid(), tb::Error);
}

TEST(Dataset, StrictBuildThrowsFirstIssue) {
  std::vector<tb::ProbeSample> rows{sample(1, 0, 0, 0.5, 1.0), sample(2, 0, 0, 2.5, 1.0)};
  tb::LoadOptions strict{true};
  EXPECT_EQ(kind_of([&] { (void)tb::SensorDataset::build(small_manifest(), rows, strict); }),
            tb::ErrorKind::SafeLimitViolation);
}

TEST(Dataset, DuplicateTrialKeyRejected) {
  auto a = sample(1, 0, 0, 0.5, 1.0);
  auto b = sample(2, 0, 0, 0.5, 1.0);
  b.point_id = a.point_id;
  auto ds = tb::SensorDataset::build(small_manifest(), {a, b});
  ASSERT_EQ(ds.issues().size(), 1u);
  EXPECT_EQ(ds.issues()[0].kind, tb::ErrorKind::DuplicateTrialKey);
}

TEST(Dataset, InconsistentFeatureWidthAlwaysThrows) {
  std::vector<tb::ProbeSample> rows{sample(1, 0, 0, 0.5, 1.0, {1, 2}), sample(2, 0, 0, 0.5, 1.0, {1})};
  EXPECT_EQ(kind_of([&] { (void)tb::SensorDataset::build(small_manifest(), rows); }),
            tb::ErrorKind::SchemaError);
}

TEST(Dataset, LookupAndSubset) {
  auto ds = tb::SensorDataset::build(small_manifest(), testing_support::line_samples(5));
  EXPECT_EQ(ds.feature_dim(), 2u);
  EXPECT_EQ(ds.at(3).sample_id, 3u);
  EXPECT_EQ(ds.find(99), nullptr);
  EXPECT_EQ(kind_of([&] { (void)ds.at(99); }), tb::ErrorKind::UnknownSampleId);
  std::vector<std::uint64_t> ids{4, 2};
  auto sub = ds.subset(ids);
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub[0].sample_id, 4u);
}

TEST(Dataset, SampleTableRoundTrips) {
  auto rows = testing_support::line_samples(7);
  auto back = tb::parse_sample_table(tb::format_sample_table(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].sample_id, rows[i].sample_id);
    EXPECT_EQ(back[i].features, rows[i].features);
    EXPECT_EQ(back[i].image_path, rows[i].image_path);
    for (std::size_t c = 0; c < 6; ++c) EXPECT_DOUBLE_EQ(back[i].label[c], rows[i].label[c]);
  }
}

TEST(Dataset, ImagePathModeRoundTrips) {
  auto rows = testing_support::line_samples(3);
  for (auto& r : rows) {
    r.features.clear();
    r.image_path = "img/" + std::to_string(r.sample_id) + ".png";
  }
  auto back = tb::parse_sample_table(tb::format_sample_table(rows));
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[2].image_path, "img/3.png");
  auto ds = tb::SensorDataset::build(small_manifest(), back);
  EXPECT_TRUE(ds.uses_image_paths());
  EXPECT_EQ(ds.feature_dim(), 0u);
}

TEST(Dataset, MissingColumnReported) {
  EXPECT_EQ(kind_of([] { (void)tb::parse_sample_table("sample_id,point_id\n1,1\n"); }),
            tb::ErrorKind::MissingColumn);
}

TEST(Dataset, SaveAndLoadFromDisk) {
  testing_support::TempDir dir("dataset");
  auto ds = tb::SensorDataset::build(small_manifest(), testing_support::line_samples(4));
  tb::save_dataset(ds, dir / "manifest.json", dir / "samples.csv");
  auto back = tb::load_dataset(dir / "manifest.json", dir / "samples.csv");
  EXPECT_EQ(back.manifest(), ds.manifest());
  EXPECT_EQ(back.size(), 4u);
  EXPECT_EQ(kind_of([&] { (void)tb::load_dataset(dir / "nope.json", dir / "samples.csv"); }),
            tb::ErrorKind::IoError);
}

TEST(Geometry, RadialDistanceAndDepthClamp) {
  auto m = small_manifest();
  m.center_x_mm = 1.0;
  tb::ClampCounter clamps;
  EXPECT_DOUBLE_EQ(tb::radial_distance(sample(1, 6.0, 0.0, 1.0, 1.0), m, &clamps), 0.5);
  EXPECT_DOUBLE_EQ(tb::radial_distance(sample(1, 1.0, 12.0, 1.0, 1.0), m, &clamps), 1.0);
  EXPECT_DOUBLE_EQ(tb::normalized_depth(sample(1, 0, 0, 1.0, 1.0), m, &clamps), 0.5);
  EXPECT_EQ(clamps.count, 1u);
}
