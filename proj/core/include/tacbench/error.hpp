#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tacbench {

/// Every failure raised by the library carries one of these kinds so callers
/// (and the CLI exit-code mapping) can branch without parsing messages.
enum class ErrorKind {
  // data model and ingestion
  SchemaError,
  MissingColumn,
  DuplicateSampleId,
  DuplicateTrialKey,
  SafeLimitViolation,
  InvalidValue,
  UnknownSampleId,
  DegenerateChannel,
  EmptySplit,
  IoError,
  // metrics
  InvalidSeries,
  ZeroVariance,
  MissingPrediction,
  EmptyPairs,
  OffLattice,
  // spatial
  NoIncludedSamples,
  TooFewBins,
  ZeroMean,
  // robustness
  UndefinedRobustness,
  BaselineZero,
  EmptySet,
  InsufficientTrials,
  RaggedGroups,
  // predictor
  NoFeatures,
  KTooLarge,
  DimensionMismatch,
  MissingClass,
  // simulator
  OutOfSurface,
  SafeLimitExceeded,
  UnknownScene,
  // report
  MissingSection,
  SchemaVersionMismatch,
  InsufficientSensors,
  MissingAxisValue,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tacbench
