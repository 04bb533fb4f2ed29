#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tacbench {

/// Grating boards are fabricated on a 0.05 mm lattice from 0.25 to 1.75 mm.
inline constexpr double kGratingStepMm = 0.05;
inline constexpr double kGratingMinMm = 0.25;
inline constexpr double kGratingMaxMm = 1.75;

/// True when value is an integer multiple of 0.05 mm (to 1e-6 relative to the step).
bool on_lattice(double value_mm) noexcept;
/// True when value is on the lattice and inside [0.25, 1.75] mm.
bool is_grating_resolution(double value_mm) noexcept;
/// Snaps a lattice value to its canonical double (k * 0.05 computed as k / 20).
double snap_to_lattice(double value_mm) noexcept;
/// The 31 board resolutions 0.25, 0.30, ..., 1.75 mm.
std::vector<double> grating_resolutions();

/// One press on a grating board.
struct GratingSample {
  std::uint64_t sample_id = 0;
  double resolution_mm = 0.0;
  double yaw_deg = 0.0;
  std::vector<double> features;

  bool operator==(const GratingSample&) const = default;
};

/// gratings.csv: sample_id,resolution_mm,yaw_deg,feature_0..feature_{F-1}
std::vector<GratingSample> parse_grating_table(std::string_view csv_text);
std::string format_grating_table(std::span<const GratingSample> samples);
std::vector<GratingSample> load_gratings(const std::filesystem::path& path);
void save_gratings(std::span<const GratingSample> samples, const std::filesystem::path& path);

}  // namespace tacbench
