#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tacbench/config.hpp"
#include "tacbench/dataset.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/robustness.hpp"
#include "tacbench/spatial.hpp"
#include "tacbench/sr_curve.hpp"

namespace tacbench {

inline constexpr std::string_view kReportSchema = "tacbench.report";
inline constexpr int kReportVersion = 1;

struct SensitivitySummary {
  double cell_mm = 0.0;
  double f_min_n = kDefaultForceThreshold;
  std::size_t included_samples = 0;
  std::size_t excluded_samples = 0;
  std::size_t occupied_bins = 0;
  std::size_t qualifying_bins = 0;
  std::optional<double> mean_mu;
  std::optional<double> std_sigma;
  std::optional<double> uniformity_u;

  bool operator==(const SensitivitySummary&) const = default;
};

SensitivitySummary summarize(const SensitivityMap& map, double f_min);

struct SpatialSummary {
  std::size_t window = kDefaultSmoothingWindow;
  double bin_width = kDefaultBinWidth;
  std::map<ChannelGroup, double> r_spatial;

  bool operator==(const SpatialSummary&) const = default;
};

SpatialSummary summarize(const SpatialReport& report);

/// Optional per-module results; absent sections stay absent in the output.
struct ReportSections {
  std::optional<CalibrationReport> calibration;
  std::optional<SRCurve> sr;
  std::optional<SensitivitySummary> sensitivity;
  std::optional<SpatialSummary> spatial;
  std::optional<LightReport> light;
  std::optional<RepeatabilityReport> repeatability;
};

struct EvalReport {
  SensorManifest manifest;
  EvalConfig config;
  ReportSections sections;
};

/// Throws MissingSection when no calibration report is given.
EvalReport assemble_report(const SensorManifest& manifest, const EvalConfig& config,
                           ReportSections sections);

/// Copies every section present in `from` into `into`.
void merge_sections(ReportSections& into, const ReportSections& from);

std::string report_to_json_text(const EvalReport& report);
/// Throws SchemaError, SchemaVersionMismatch, or MissingSection when
/// `require_calibration` is set and the calibration section is absent.
EvalReport report_from_json_text(std::string_view text, bool require_calibration = true);
void save_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path, bool require_calibration = true);

/// Flat section,key,value listing of every reported number.
std::string report_to_csv(const EvalReport& report);

}  // namespace tacbench
