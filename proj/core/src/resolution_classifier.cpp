#include "tacbench/resolution_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tacbench/error.hpp"
#include "tacbench/rng.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

long lattice_key(double mm) { return std::lround(mm / kGratingStepMm); }

}  // namespace

ResolutionClassifier ResolutionClassifier::fit(std::span<const GratingSample> train,
                                               std::span<const double> required_classes) {
  if (train.empty()) throw Error(ErrorKind::EmptySplit, "no grating training samples");
  const std::size_t dim = train.front().features.size();
  if (dim == 0) throw Error(ErrorKind::NoFeatures, "grating samples carry no features");

  std::map<long, std::pair<std::vector<double>, std::size_t>> sums;
  for (const auto& g : train) {
    if (g.features.size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "grating samples have inconsistent feature sizes");
    }
    auto& [sum, count] = sums[lattice_key(g.resolution_mm)];
    if (sum.empty()) sum.assign(dim, 0.0);
    for (std::size_t f = 0; f < dim; ++f) sum[f] += g.features[f];
    ++count;
  }
  for (double required : required_classes) {
    if (!sums.contains(lattice_key(required))) {
      throw Error(ErrorKind::MissingClass, "no training sample for resolution " +
                                               detail::format_double(required) + " mm");
    }
  }

  ResolutionClassifier clf;
  clf.dim_ = dim;
  for (const auto& [key, entry] : sums) {
    clf.classes_.push_back(static_cast<double>(key) / 20.0);
    for (double v : entry.first) clf.prototypes_.push_back(v / static_cast<double>(entry.second));
  }
  return clf;
}

double ResolutionClassifier::classify(std::span<const double> features) const {
  if (features.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "query has " + std::to_string(features.size()) +
                                                  " features, classifier expects " +
                                                  std::to_string(dim_));
  }
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_class = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const double* proto = prototypes_.data() + c * dim_;
    double d2 = 0.0;
    for (std::size_t f = 0; f < dim_; ++f) {
      const double diff = proto[f] - features[f];
      d2 += diff * diff;
    }
    if (d2 < best) {
      best = d2;
      best_class = c;
    }
  }
  return classes_[best_class];
}

std::vector<SRPair> ResolutionClassifier::evaluate(std::span<const GratingSample> samples) const {
  std::vector<SRPair> pairs;
  pairs.reserve(samples.size());
  for (const auto& g : samples) {
    const long key = lattice_key(g.resolution_mm);
    bool known = false;
    for (double c : classes_) known = known || lattice_key(c) == key;
    if (!known) {
      throw Error(ErrorKind::MissingClass, "resolution " + detail::format_double(g.resolution_mm) +
                                               " mm was absent from training");
    }
    pairs.push_back({g.sample_id, static_cast<double>(key) / 20.0, classify(g.features)});
  }
  return pairs;
}

std::pair<std::vector<GratingSample>, std::vector<GratingSample>> split_gratings(
    std::span<const GratingSample> samples, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0) || train_fraction > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "train fraction must lie in (0, 1]");
  }
  std::map<long, std::vector<const GratingSample*>> classes;
  for (const auto& g : samples) classes[lattice_key(g.resolution_mm)].push_back(&g);

  Rng rng(derive_seed(seed, "grating-split"));
  std::pair<std::vector<GratingSample>, std::vector<GratingSample>> out;
  for (auto& [key, members] : classes) {
    std::sort(members.begin(), members.end(),
              [](const GratingSample* a, const GratingSample* b) { return a->sample_id < b->sample_id; });
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.below(i)]);
    }
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < n_train ? out.first : out.second).push_back(*members[i]);
    }
  }
  return out;
}

}  // namespace tacbench
