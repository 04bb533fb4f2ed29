#include "tacbench/prediction_set.hpp"

#include <array>
#include <cmath>

#include "text_io.hpp"

namespace tacbench {
namespace {

constexpr std::array<std::string_view, 7> kColumns{
    "sample_id", "pred_px_mm", "pred_py_mm", "pred_pz_mm", "pred_fx_n", "pred_fy_n", "pred_fz_n"};

std::string id_list(const std::vector<std::uint64_t>& ids) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  if (ids.size() > shown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

void PredictionSet::insert(std::uint64_t sample_id, const Label6& values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::InvalidValue,
                  "prediction for sample " + std::to_string(sample_id) + " is not finite");
    }
  }
  if (!values_.emplace(sample_id, values).second) {
    throw Error(ErrorKind::DuplicateSampleId,
                "prediction for sample " + std::to_string(sample_id) + " given twice");
  }
}

const Label6* PredictionSet::find(std::uint64_t sample_id) const noexcept {
  const auto it = values_.find(sample_id);
  return it == values_.end() ? nullptr : &it->second;
}

PredictionSet parse_predictions(std::string_view csv_text) {
  PredictionSet out(PredictionSource::External);
  std::size_t start = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (start < csv_text.size()) {
    auto end = csv_text.find('\n', start);
    if (end == std::string_view::npos) end = csv_text.size();
    const auto line = detail::trim(csv_text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (!header_seen) {
      for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (detail::column_index(fields, kColumns[i]) < 0) {
          throw Error(ErrorKind::SchemaError,
                      "predictions.csv lacks column '" + std::string(kColumns[i]) + "'");
        }
      }
      if (fields.size() != kColumns.size()) {
        throw Error(ErrorKind::SchemaError, "predictions.csv must have exactly 7 columns");
      }
      for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (fields[i] != kColumns[i]) {
          throw Error(ErrorKind::SchemaError, "predictions.csv columns are out of order");
        }
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kColumns.size()) {
      throw Error(ErrorKind::SchemaError, "predictions.csv line " + std::to_string(line_no) +
                                              " has " + std::to_string(fields.size()) +
                                              " fields, expected 7");
    }
    Label6 values{};
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      values[c] = detail::parse_double(fields[c + 1], kColumns[c + 1]);
    }
    out.insert(detail::parse_uint(fields[0], "sample_id"), values);
  }
  if (!header_seen) throw Error(ErrorKind::SchemaError, "predictions.csv is empty");
  return out;
}

std::string format_predictions(const PredictionSet& predictions) {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const auto& [id, values] : predictions.values()) {
    out += std::to_string(id);
    for (double v : values) out += ',' + detail::format_double(v);
    out += '\n';
  }
  return out;
}

PredictionSet load_predictions(const std::filesystem::path& path) {
  return parse_predictions(detail::read_text(path));
}

void save_predictions(const PredictionSet& predictions, const std::filesystem::path& path) {
  detail::write_text(path, format_predictions(predictions));
}

void validate_against(const PredictionSet& predictions, const SensorDataset& dataset) {
  std::vector<std::uint64_t> unknown;
  for (const auto& [id, values] : predictions.values()) {
    if (dataset.find(id) == nullptr) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    throw Error(ErrorKind::UnknownSampleId, "predictions reference samples not in dataset: " +
                                                id_list(unknown));
  }
}

void require_predictions(const PredictionSet& predictions, std::span<const ProbeSample> samples) {
  std::vector<std::uint64_t> missing;
  for (const auto& s : samples) {
    if (predictions.find(s.sample_id) == nullptr) missing.push_back(s.sample_id);
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::MissingPrediction, "no prediction for samples: " + id_list(missing));
  }
}

}  // namespace tacbench
