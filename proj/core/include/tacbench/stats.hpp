#pragma once

#include <span>

namespace tacbench {

/// Arithmetic mean. Throws InvalidArgument on an empty range.
double mean(std::span<const double> values);

/// Sample standard deviation (denominator n - 1), two-pass.
/// Throws InvalidArgument for fewer than two values.
double sample_std(std::span<const double> values);

}  // namespace tacbench
