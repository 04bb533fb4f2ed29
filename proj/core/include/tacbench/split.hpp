#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "tacbench/dataset.hpp"

namespace tacbench {

enum class Split : std::uint8_t { Train = 0, Val, Test };

std::string_view to_string(Split split) noexcept;
std::optional<Split> parse_split(std::string_view name) noexcept;

struct SplitRatios {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;

  bool operator==(const SplitRatios&) const = default;
};

/// Exhaustive, disjoint assignment of sample ids to train/val/test.
struct SplitAssignment {
  std::map<std::uint64_t, Split> assignment;
  std::optional<std::uint64_t> seed;

  [[nodiscard]] std::vector<std::uint64_t> ids(Split which) const;
  [[nodiscard]] std::array<std::size_t, 3> counts() const;
  [[nodiscard]] std::optional<Split> find(std::uint64_t sample_id) const;

  bool operator==(const SplitAssignment&) const = default;
};

/// Target sizes for n samples: train and val are rounded, test takes the rest.
std::array<std::size_t, 3> split_targets(std::size_t n, const SplitRatios& ratios);

/// Seeded shuffle then cut. With group_by_point, whole probe points are dealt
/// to the split with the largest relative shortfall so no point straddles
/// splits. Throws EmptySplit when any split would be empty.
SplitAssignment split_dataset(const SensorDataset& dataset, const SplitRatios& ratios,
                              std::uint64_t seed, bool group_by_point = false);

/// split.csv: sample_id,split
SplitAssignment load_split(const std::filesystem::path& path);
void save_split(const SplitAssignment& split, const std::filesystem::path& path);

/// Throws UnknownSampleId/SchemaError unless the split covers exactly the dataset ids.
void check_split_covers(const SplitAssignment& split, const SensorDataset& dataset);

}  // namespace tacbench
