#include "tacbench/gratings.hpp"

#include <cmath>
#include <set>

#include "tacbench/error.hpp"
#include "text_io.hpp"

namespace tacbench {

bool on_lattice(double value_mm) noexcept {
  if (!std::isfinite(value_mm)) return false;
  const double steps = value_mm / kGratingStepMm;
  return std::abs(steps - std::round(steps)) <= 1e-6;
}

bool is_grating_resolution(double value_mm) noexcept {
  return on_lattice(value_mm) && value_mm >= kGratingMinMm - 1e-9 &&
         value_mm <= kGratingMaxMm + 1e-9;
}

double snap_to_lattice(double value_mm) noexcept {
  return std::round(value_mm / kGratingStepMm) / 20.0;
}

std::vector<double> grating_resolutions() {
  std::vector<double> out;
  for (int k = 5; k <= 35; ++k) out.push_back(static_cast<double>(k) / 20.0);
  return out;
}

std::vector<GratingSample> parse_grating_table(std::string_view csv_text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv_text.size()) {
    auto end = csv_text.find('\n', start);
    if (end == std::string_view::npos) end = csv_text.size();
    auto line = detail::trim(csv_text.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorKind::SchemaError, "grating table is empty");
  const auto header = detail::split_fields(lines.front());
  constexpr std::array<std::string_view, 3> kLead{"sample_id", "resolution_mm", "yaw_deg"};
  for (std::size_t i = 0; i < kLead.size(); ++i) {
    if (header.size() <= i || header[i] != kLead[i]) {
      throw Error(ErrorKind::MissingColumn, "grating table column " + std::to_string(i) +
                                                " must be '" + std::string(kLead[i]) + "'");
    }
  }
  const std::size_t dim = header.size() - kLead.size();
  for (std::size_t f = 0; f < dim; ++f) {
    if (header[kLead.size() + f] != "feature_" + std::to_string(f)) {
      throw Error(ErrorKind::SchemaError, "expected column 'feature_" + std::to_string(f) + "'");
    }
  }
  std::vector<GratingSample> out;
  std::set<std::uint64_t> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = detail::split_fields(lines[li]);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::SchemaError,
                  "grating table line " + std::to_string(li + 1) + " has wrong field count");
    }
    GratingSample g;
    g.sample_id = detail::parse_uint(fields[0], "sample_id");
    g.resolution_mm = detail::parse_double(fields[1], "resolution_mm");
    g.yaw_deg = detail::parse_double(fields[2], "yaw_deg");
    if (!is_grating_resolution(g.resolution_mm)) {
      throw Error(ErrorKind::OffLattice, "resolution " + std::string(fields[1]) +
                                             " mm is not a grating board resolution");
    }
    if (!seen.insert(g.sample_id).second) {
      throw Error(ErrorKind::DuplicateSampleId,
                  "grating sample " + std::to_string(g.sample_id) + " appears twice");
    }
    for (std::size_t f = 0; f < dim; ++f) {
      g.features.push_back(detail::parse_double(fields[3 + f], "feature"));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::string format_grating_table(std::span<const GratingSample> samples) {
  const std::size_t dim = samples.empty() ? 0 : samples.front().features.size();
  std::string out = "sample_id,resolution_mm,yaw_deg";
  for (std::size_t f = 0; f < dim; ++f) out += ",feature_" + std::to_string(f);
  out += '\n';
  for (const auto& g : samples) {
    out += std::to_string(g.sample_id);
    out += ',' + detail::format_double(g.resolution_mm);
    out += ',' + detail::format_double(g.yaw_deg);
    for (double v : g.features) out += ',' + detail::format_double(v);
    out += '\n';
  }
  return out;
}

std::vector<GratingSample> load_gratings(const std::filesystem::path& path) {
  return parse_grating_table(detail::read_text(path));
}

void save_gratings(std::span<const GratingSample> samples, const std::filesystem::path& path) {
  detail::write_text(path, format_grating_table(samples));
}

}  // namespace tacbench
