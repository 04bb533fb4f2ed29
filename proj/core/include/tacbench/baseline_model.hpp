#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacbench/dataset.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/split.hpp"

namespace tacbench {

inline constexpr std::size_t kDefaultNeighbors = 3;

/// k-nearest-neighbour regressor over feature vectors. Stores the training
/// pairs with min-max normalized labels; predictions average the k nearest
/// labels (Euclidean distance, ties broken by ascending sample_id) and are
/// returned in raw units.
class BaselineModel {
 public:
  /// Throws EmptySplit, NoFeatures, KTooLarge or InvalidArgument (k == 0).
  static BaselineModel fit(const SensorDataset& dataset, std::span<const std::uint64_t> train_ids,
                           const NormParams& norm, std::size_t k = kDefaultNeighbors);
  static BaselineModel fit(const SensorDataset& dataset, const SplitAssignment& split,
                           const NormParams& norm, std::size_t k = kDefaultNeighbors);

  /// Throws DimensionMismatch.
  [[nodiscard]] Label6 predict_one(std::span<const double> features) const;
  [[nodiscard]] PredictionSet predict(std::span<const ProbeSample> samples) const;

  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t train_size() const noexcept { return ids_.size(); }
  [[nodiscard]] const NormParams& norm() const noexcept { return norm_; }

  /// Versioned JSON dump ("format": "tacbench-knn", "version": 1).
  [[nodiscard]] std::string to_json_text() const;
  static BaselineModel from_json_text(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static BaselineModel load(const std::filesystem::path& path);

  bool operator==(const BaselineModel&) const = default;

 private:
  std::size_t k_ = kDefaultNeighbors;
  std::size_t dim_ = 0;
  NormParams norm_;
  std::vector<std::uint64_t> ids_;    // ascending
  std::vector<double> features_;      // row-major, ids_.size() x dim_
  std::vector<Label6> labels_;        // normalized
};

}  // namespace tacbench
