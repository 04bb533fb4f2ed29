#include "tacbench/stats.hpp"

#include <cmath>

#include "tacbench/error.hpp"

namespace tacbench {

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "mean of an empty range");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "sample standard deviation needs two values");
  }
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace tacbench
