#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string_view>

#include "tacbench/dataset.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

enum class PredictionSource : std::uint8_t { Baseline, External };

/// Predicted (Px, Py, Pz, Fx, Fy, Fz) per sample id, in raw units.
class PredictionSet {
 public:
  explicit PredictionSet(PredictionSource source = PredictionSource::External) : source_(source) {}

  /// Throws DuplicateSampleId or InvalidValue (non-finite).
  void insert(std::uint64_t sample_id, const Label6& values);

  [[nodiscard]] const Label6* find(std::uint64_t sample_id) const noexcept;
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
  [[nodiscard]] PredictionSource source() const noexcept { return source_; }
  [[nodiscard]] const std::map<std::uint64_t, Label6>& values() const noexcept { return values_; }

  bool operator==(const PredictionSet&) const = default;

 private:
  PredictionSource source_;
  std::map<std::uint64_t, Label6> values_;
};

/// predictions.csv: sample_id, pred_px_mm, pred_py_mm, pred_pz_mm, pred_fx_n, pred_fy_n, pred_fz_n
PredictionSet parse_predictions(std::string_view csv_text);
std::string format_predictions(const PredictionSet& predictions);
PredictionSet load_predictions(const std::filesystem::path& path);
void save_predictions(const PredictionSet& predictions, const std::filesystem::path& path);

/// Throws UnknownSampleId listing every prediction id absent from the dataset.
void validate_against(const PredictionSet& predictions, const SensorDataset& dataset);

/// Throws MissingPrediction listing every sample that has no prediction.
void require_predictions(const PredictionSet& predictions, std::span<const ProbeSample> samples);

}  // namespace tacbench
