#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace tacbench {

/// Absolute slack for comparing errors against lattice thresholds; 0.05 has
/// no exact binary representation.
inline constexpr double kLatticeSlack = 1e-9;

struct SRPair {
  std::uint64_t sample_id = 0;
  double true_resolution_mm = 0.0;
  double predicted_resolution_mm = 0.0;

  bool operator==(const SRPair&) const = default;
};

/// Accuracy-over-tolerance curve. accuracy[i] belongs to thresholds_mm[i].
struct SRCurve {
  std::vector<double> thresholds_mm;
  std::vector<double> accuracy;
  std::size_t pair_count = 0;

  /// Accuracy at a listed threshold. Throws InvalidArgument if absent.
  [[nodiscard]] double at(double threshold_mm) const;

  bool operator==(const SRCurve&) const = default;
};

/// 0.00, 0.05, ..., 1.50 mm: the strictest to the full board range.
std::vector<double> default_sr_thresholds();

/// accuracy(eps) = fraction of pairs with |predicted - true| <= eps + kLatticeSlack.
/// Thresholds must be ascending multiples of 0.05 mm; pairs must be board
/// resolutions. Throws EmptyPairs, OffLattice or InvalidArgument.
SRCurve sr_curve(std::span<const SRPair> pairs, std::span<const double> thresholds_mm);

/// sr_pairs.csv: sample_id,true_res_mm,pred_res_mm
std::vector<SRPair> parse_sr_pairs(std::string_view csv_text);
std::string format_sr_pairs(std::span<const SRPair> pairs);
std::vector<SRPair> load_sr_pairs(const std::filesystem::path& path);
void save_sr_pairs(std::span<const SRPair> pairs, const std::filesystem::path& path);

}  // namespace tacbench
