#pragma once

#include <vector>

#include "tacbench/dataset.hpp"

namespace testing_support {

inline tacbench::SensorManifest small_manifest() {
  tacbench::SensorManifest m;
  m.sensor_name = "unit";
  m.camera_resolution_mp = 1.0;
  m.gel_thickness_mm = 2.0;
  m.fov_mm2 = 300.0;
  m.fps_hz = 30.0;
  m.max_depth_mm = 2.0;
  m.max_force_n = 5.0;
  m.max_radius_mm = 10.0;
  return m;
}

inline tacbench::ProbeSample sample(std::uint64_t id, double px, double py, double pz, double fz,
                                    std::vector<double> features = {}) {
  tacbench::ProbeSample s;
  s.sample_id = id;
  s.point_id = static_cast<std::int64_t>(id);
  s.label = {px, py, pz, 0.1 * px, -0.1 * py, fz};
  s.intensity = 100.0;
  s.scene_id = "S0";
  s.features = std::move(features);
  return s;
}

/// n samples on a line with distinct values on every channel.
inline std::vector<tacbench::ProbeSample> line_samples(std::size_t n) {
  std::vector<tacbench::ProbeSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    out.push_back(sample(i + 1, 8.0 * t - 4.0, 3.0 - 6.0 * t, 1.9 * t, 4.0 * t + 0.1, {t, 1.0 - t}));
  }
  return out;
}

}  // namespace testing_support
