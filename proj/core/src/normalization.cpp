#include "tacbench/normalization.hpp"

#include <algorithm>
#include <limits>

#include "json_io.hpp"

namespace tacbench {

NormParams fit_minmax(const SensorDataset& dataset, const SplitAssignment& split) {
  NormParams params;
  for (auto& r : params.ranges) {
    r.min = std::numeric_limits<double>::infinity();
    r.max = -std::numeric_limits<double>::infinity();
  }
  std::size_t n = 0;
  for (const auto& s : dataset.samples()) {
    if (split.find(s.sample_id) != Split::Train) continue;
    ++n;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      params.ranges[c].min = std::min(params.ranges[c].min, s.label[c]);
      params.ranges[c].max = std::max(params.ranges[c].max, s.label[c]);
    }
  }
  if (n == 0) throw Error(ErrorKind::EmptySplit, "training split is empty");
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (!(params.ranges[c].max > params.ranges[c].min)) {
      throw Error(ErrorKind::DegenerateChannel,
                  std::string("channel ") + std::string(to_string(kAllChannels[c])) +
                      " is constant over the training split");
    }
  }
  return params;
}

Label6 normalize(const Label6& values, const NormParams& params) noexcept {
  Label6 out{};
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const auto& r = params.ranges[c];
    out[c] = (values[c] - r.min) / (r.max - r.min);
  }
  return out;
}

Label6 denormalize(const Label6& values, const NormParams& params) noexcept {
  Label6 out{};
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const auto& r = params.ranges[c];
    out[c] = values[c] * (r.max - r.min) + r.min;
  }
  return out;
}

namespace detail {

Json norm_to_json(const NormParams& params) {
  Json j;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    j[std::string(to_string(kAllChannels[c]))] = {params.ranges[c].min, params.ranges[c].max};
  }
  return j;
}

NormParams norm_from_json(const Json& j) {
  NormParams params;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const auto key = std::string(to_string(kAllChannels[c]));
    const auto it = j.find(key);
    if (it == j.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
        !(*it)[1].is_number()) {
      throw Error(ErrorKind::SchemaError, "norm entry for " + key + " must be [min, max]");
    }
    params.ranges[c] = {(*it)[0].get<double>(), (*it)[1].get<double>()};
    if (!(params.ranges[c].max > params.ranges[c].min)) {
      throw Error(ErrorKind::DegenerateChannel, "norm range for " + key + " is empty");
    }
  }
  return params;
}

}  // namespace detail

std::string norm_params_to_json_text(const NormParams& params) {
  detail::Json doc;
  doc["norm"] = detail::norm_to_json(params);
  return detail::dump(doc);
}

NormParams norm_params_from_json_text(std::string_view text) {
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("norm file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "norm file must hold a JSON object");
  return detail::norm_from_json(doc.contains("norm") ? doc["norm"] : doc);
}

}  // namespace tacbench
