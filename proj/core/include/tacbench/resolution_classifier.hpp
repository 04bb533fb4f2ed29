#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tacbench/gratings.hpp"
#include "tacbench/sr_curve.hpp"

namespace tacbench {

/// Nearest class-mean classifier for grating resolution. Each resolution
/// class is represented by the mean feature vector of its training presses.
class ResolutionClassifier {
 public:
  /// `required_classes`, when non-empty, must all be present in `train`
  /// (MissingClass otherwise). Throws NoFeatures / DimensionMismatch.
  static ResolutionClassifier fit(std::span<const GratingSample> train,
                                  std::span<const double> required_classes = {});

  /// Resolution of the nearest prototype; equal distances go to the finer class.
  [[nodiscard]] double classify(std::span<const double> features) const;

  /// Classifies every sample into (true, predicted) pairs. Throws MissingClass
  /// when a sample's true resolution has no prototype.
  [[nodiscard]] std::vector<SRPair> evaluate(std::span<const GratingSample> samples) const;

  [[nodiscard]] std::span<const double> classes() const noexcept { return classes_; }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return dim_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> classes_;     // ascending resolution, mm
  std::vector<double> prototypes_;  // classes_.size() x dim_
};

/// Stratified split: within each resolution class, a seeded shuffle sends
/// llround(train_fraction * n) presses to the first set and the rest to the second.
std::pair<std::vector<GratingSample>, std::vector<GratingSample>> split_gratings(
    std::span<const GratingSample> samples, double train_fraction, std::uint64_t seed);

}  // namespace tacbench
