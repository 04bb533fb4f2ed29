#include "tacbench/sr_curve.hpp"

#include <cmath>

#include "tacbench/error.hpp"
#include "tacbench/gratings.hpp"
#include "text_io.hpp"

namespace tacbench {

double SRCurve::at(double threshold_mm) const {
  for (std::size_t i = 0; i < thresholds_mm.size(); ++i) {
    if (std::abs(thresholds_mm[i] - threshold_mm) <= kLatticeSlack) return accuracy[i];
  }
  throw Error(ErrorKind::InvalidArgument,
              "threshold " + detail::format_double(threshold_mm) + " mm not on the curve");
}

std::vector<double> default_sr_thresholds() {
  std::vector<double> out;
  for (int k = 0; k <= 30; ++k) out.push_back(static_cast<double>(k) / 20.0);
  return out;
}

SRCurve sr_curve(std::span<const SRPair> pairs, std::span<const double> thresholds_mm) {
  if (pairs.empty()) throw Error(ErrorKind::EmptyPairs, "no resolution pairs to evaluate");
  for (std::size_t i = 0; i < thresholds_mm.size(); ++i) {
    const double t = thresholds_mm[i];
    if (!on_lattice(t) || t < 0.0) {
      throw Error(ErrorKind::OffLattice,
                  "threshold " + detail::format_double(t) + " mm is not a multiple of 0.05 mm");
    }
    if (i > 0 && !(t > thresholds_mm[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "thresholds must be strictly ascending");
    }
  }
  std::vector<double> errors;
  errors.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (!is_grating_resolution(p.true_resolution_mm) ||
        !is_grating_resolution(p.predicted_resolution_mm)) {
      throw Error(ErrorKind::OffLattice,
                  "pair for sample " + std::to_string(p.sample_id) +
                      " is not on the 0.25-1.75 mm grating lattice");
    }
    errors.push_back(std::abs(p.predicted_resolution_mm - p.true_resolution_mm));
  }

  SRCurve curve;
  curve.pair_count = pairs.size();
  curve.thresholds_mm.assign(thresholds_mm.begin(), thresholds_mm.end());
  curve.accuracy.reserve(thresholds_mm.size());
  for (double t : thresholds_mm) {
    std::size_t hits = 0;
    for (double e : errors) {
      if (e <= t + kLatticeSlack) ++hits;
    }
    curve.accuracy.push_back(static_cast<double>(hits) / static_cast<double>(pairs.size()));
  }
  return curve;
}

std::vector<SRPair> parse_sr_pairs(std::string_view csv_text) {
  std::vector<SRPair> out;
  std::size_t start = 0;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (start < csv_text.size()) {
    auto end = csv_text.find('\n', start);
    if (end == std::string_view::npos) end = csv_text.size();
    const auto line = detail::trim(csv_text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "sample_id" || fields[1] != "true_res_mm" ||
          fields[2] != "pred_res_mm") {
        throw Error(ErrorKind::SchemaError,
                    "sr_pairs.csv header must be 'sample_id,true_res_mm,pred_res_mm'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw Error(ErrorKind::SchemaError, "sr_pairs.csv line " + std::to_string(line_no) +
                                              " must have 3 fields");
    }
    out.push_back({detail::parse_uint(fields[0], "sample_id"),
                   detail::parse_double(fields[1], "true_res_mm"),
                   detail::parse_double(fields[2], "pred_res_mm")});
  }
  if (!header_seen) throw Error(ErrorKind::SchemaError, "sr_pairs.csv is empty");
  return out;
}

std::string format_sr_pairs(std::span<const SRPair> pairs) {
  std::string out = "sample_id,true_res_mm,pred_res_mm\n";
  for (const auto& p : pairs) {
    out += std::to_string(p.sample_id);
    out += ',' + detail::format_double(p.true_resolution_mm);
    out += ',' + detail::format_double(p.predicted_resolution_mm);
    out += '\n';
  }
  return out;
}

std::vector<SRPair> load_sr_pairs(const std::filesystem::path& path) {
  return parse_sr_pairs(detail::read_text(path));
}

void save_sr_pairs(std::span<const SRPair> pairs, const std::filesystem::path& path) {
  detail::write_text(path, format_sr_pairs(pairs));
}

}  // namespace tacbench
