#include "tacbench/error.hpp"

namespace tacbench {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::DuplicateSampleId: return "DuplicateSampleId";
    case ErrorKind::DuplicateTrialKey: return "DuplicateTrialKey";
    case ErrorKind::SafeLimitViolation: return "SafeLimitViolation";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::UnknownSampleId: return "UnknownSampleId";
    case ErrorKind::DegenerateChannel: return "DegenerateChannel";
    case ErrorKind::EmptySplit: return "EmptySplit";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidSeries: return "InvalidSeries";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::MissingPrediction: return "MissingPrediction";
    case ErrorKind::EmptyPairs: return "EmptyPairs";
    case ErrorKind::OffLattice: return "OffLattice";
    case ErrorKind::NoIncludedSamples: return "NoIncludedSamples";
    case ErrorKind::TooFewBins: return "TooFewBins";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::UndefinedRobustness: return "UndefinedRobustness";
    case ErrorKind::BaselineZero: return "BaselineZero";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::InsufficientTrials: return "InsufficientTrials";
    case ErrorKind::RaggedGroups: return "RaggedGroups";
    case ErrorKind::NoFeatures: return "NoFeatures";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::MissingClass: return "MissingClass";
    case ErrorKind::OutOfSurface: return "OutOfSurface";
    case ErrorKind::SafeLimitExceeded: return "SafeLimitExceeded";
    case ErrorKind::UnknownScene: return "UnknownScene";
    case ErrorKind::MissingSection: return "MissingSection";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorKind::InsufficientSensors: return "InsufficientSensors";
    case ErrorKind::MissingAxisValue: return "MissingAxisValue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace tacbench
