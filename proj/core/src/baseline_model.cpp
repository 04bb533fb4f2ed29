#include "tacbench/baseline_model.hpp"

#include <algorithm>
#include <numeric>

#include "json_io.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

constexpr const char* kFormat = "tacbench-knn";
constexpr int kVersion = 1;

struct Neighbor {
  double dist2;
  std::size_t row;  // row order equals ascending sample_id

  bool operator<(const Neighbor& other) const noexcept {
    return dist2 < other.dist2 || (dist2 == other.dist2 && row < other.row);
  }
};

}  // namespace

BaselineModel BaselineModel::fit(const SensorDataset& dataset,
                                 std::span<const std::uint64_t> train_ids, const NormParams& norm,
                                 std::size_t k) {
  if (train_ids.empty()) throw Error(ErrorKind::EmptySplit, "no training samples");
  if (dataset.feature_dim() == 0) {
    throw Error(ErrorKind::NoFeatures, "dataset carries no feature vectors");
  }
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (k > train_ids.size()) {
    throw Error(ErrorKind::KTooLarge, "k = " + std::to_string(k) + " exceeds training size " +
                                          std::to_string(train_ids.size()));
  }

  std::vector<std::uint64_t> ids(train_ids.begin(), train_ids.end());
  std::sort(ids.begin(), ids.end());
  BaselineModel model;
  model.k_ = k;
  model.dim_ = dataset.feature_dim();
  model.norm_ = norm;
  model.features_.reserve(ids.size() * model.dim_);
  model.labels_.reserve(ids.size());
  for (auto id : ids) {
    const auto& s = dataset.at(id);
    model.features_.insert(model.features_.end(), s.features.begin(), s.features.end());
    model.labels_.push_back(normalize(s.label, norm));
  }
  model.ids_ = std::move(ids);
  return model;
}

BaselineModel BaselineModel::fit(const SensorDataset& dataset, const SplitAssignment& split,
                                 const NormParams& norm, std::size_t k) {
  const auto ids = split.ids(Split::Train);
  return fit(dataset, ids, norm, k);
}

Label6 BaselineModel::predict_one(std::span<const double> features) const {
  if (features.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "query has " + std::to_string(features.size()) +
                                                  " features, model expects " +
                                                  std::to_string(dim_));
  }
  // Keep the k best in a small sorted buffer; k is tiny compared to the training set.
  std::vector<Neighbor> best;
  best.reserve(k_ + 1);
  const std::size_t rows = ids_.size();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = features_.data() + r * dim_;
    double d2 = 0.0;
    for (std::size_t f = 0; f < dim_; ++f) {
      const double diff = row[f] - features[f];
      d2 += diff * diff;
    }
    const Neighbor cand{d2, r};
    if (best.size() == k_ && !(cand < best.back())) continue;
    best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
    if (best.size() > k_) best.pop_back();
  }

  Label6 mean{};
  for (const auto& n : best) {
    for (std::size_t c = 0; c < kChannelCount; ++c) mean[c] += labels_[n.row][c];
  }
  for (auto& v : mean) v /= static_cast<double>(best.size());
  return denormalize(mean, norm_);
}

PredictionSet BaselineModel::predict(std::span<const ProbeSample> samples) const {
  PredictionSet out(PredictionSource::Baseline);
  for (const auto& s : samples) out.insert(s.sample_id, predict_one(s.features));
  return out;
}

std::string BaselineModel::to_json_text() const {
  detail::Json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["k"] = k_;
  j["feature_dim"] = dim_;
  j["norm"] = detail::norm_to_json(norm_);
  detail::Json train = detail::Json::array();
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    detail::Json row;
    row["id"] = ids_[r];
    row["features"] = std::vector<double>(features_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
                                          features_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_));
    row["label"] = labels_[r];
    train.push_back(std::move(row));
  }
  j["train"] = std::move(train);
  return j.dump() + "\n";
}

BaselineModel BaselineModel::from_json_text(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("model is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kFormat) {
    throw Error(ErrorKind::SchemaError, "not a tacbench-knn model file");
  }
  if (j.value("version", 0) != kVersion) {
    throw Error(ErrorKind::SchemaVersionMismatch,
                "model version " + std::to_string(j.value("version", 0)) + " is not supported");
  }
  BaselineModel model;
  model.k_ = j.at("k").get<std::size_t>();
  model.dim_ = j.at("feature_dim").get<std::size_t>();
  model.norm_ = detail::norm_from_json(j.at("norm"));
  for (const auto& row : j.at("train")) {
    const auto features = row.at("features").get<std::vector<double>>();
    if (features.size() != model.dim_) {
      throw Error(ErrorKind::SchemaError, "model training row has wrong feature count");
    }
    model.ids_.push_back(row.at("id").get<std::uint64_t>());
    model.features_.insert(model.features_.end(), features.begin(), features.end());
    model.labels_.push_back(row.at("label").get<Label6>());
  }
  if (model.k_ == 0 || model.k_ > model.ids_.size()) {
    throw Error(ErrorKind::KTooLarge, "model k is inconsistent with its training rows");
  }
  if (!std::is_sorted(model.ids_.begin(), model.ids_.end())) {
    throw Error(ErrorKind::SchemaError, "model training rows must be sorted by id");
  }
  return model;
}

void BaselineModel::save(const std::filesystem::path& path) const {
  detail::write_text(path, to_json_text());
}

BaselineModel BaselineModel::load(const std::filesystem::path& path) {
  return from_json_text(detail::read_text(path));
}

}  // namespace tacbench
