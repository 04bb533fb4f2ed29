#include "tacbench/config.hpp"

#include <cmath>

#include "config_json.hpp"
#include "tacbench/error.hpp"
#include "tacbench/sr_curve.hpp"
#include "text_io.hpp"

namespace tacbench {

void EvalConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, std::string("config: ") + what);
  };
  require(f_min_n >= 0.0, "f_min_n must be non-negative");
  require(smoothing_window % 2 == 1, "smoothing_window must be odd");
  require(bin_width > 0.0 && bin_width <= 1.0, "bin_width must lie in (0, 1]");
  require(cell_fraction > 0.0, "cell_fraction must be positive");
  require(k >= 1, "k must be at least 1");
  require(ratios.train > 0 && ratios.val >= 0 && ratios.test > 0 &&
              std::abs(ratios.train + ratios.val + ratios.test - 1.0) < 1e-9,
          "split ratios must be positive and sum to 1");
  require(grating_train_fraction > 0.0 && grating_train_fraction < 1.0,
          "grating_train_fraction must lie in (0, 1)");
  require(depth_step_mm > 0.0, "depth_step_mm must be positive");
  require(calibration_grid >= 1 && repeat_points >= 1 && repeat_trials >= 2 && presses_per_board >= 2,
          "protocol sizes are too small");
}

std::vector<double> EvalConfig::thresholds() const {
  return sr_thresholds_mm.empty() ? default_sr_thresholds() : sr_thresholds_mm;
}

namespace detail {

Json config_to_json(const EvalConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["f_min_n"] = c.f_min_n;
  j["smoothing_window"] = c.smoothing_window;
  j["bin_width"] = c.bin_width;
  j["cell_fraction"] = c.cell_fraction;
  j["min_occupancy"] = c.min_occupancy;
  j["k"] = c.k;
  j["split_ratios"] = {c.ratios.train, c.ratios.val, c.ratios.test};
  j["group_by_point"] = c.group_by_point;
  j["normalized"] = c.normalized;
  j["sr_thresholds_mm"] = c.thresholds();
  j["grating_train_fraction"] = c.grating_train_fraction;
  j["depth_step_mm"] = c.depth_step_mm;
  j["calibration_grid"] = c.calibration_grid;
  j["depths_per_point"] = c.depths_per_point;
  j["repeat_points"] = c.repeat_points;
  j["repeat_trials"] = c.repeat_trials;
  j["presses_per_board"] = c.presses_per_board;
  return j;
}

EvalConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaError, "config must be a JSON object");
  EvalConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "f_min_n") {
        c.f_min_n = value.get<double>();
      } else if (key == "smoothing_window") {
        c.smoothing_window = value.get<std::size_t>();
      } else if (key == "bin_width") {
        c.bin_width = value.get<double>();
      } else if (key == "cell_fraction") {
        c.cell_fraction = value.get<double>();
      } else if (key == "min_occupancy") {
        c.min_occupancy = value.get<std::size_t>();
      } else if (key == "k") {
        c.k = value.get<std::size_t>();
      } else if (key == "split_ratios") {
        const auto r = value.get<std::vector<double>>();
        if (r.size() != 3) throw Error(ErrorKind::SchemaError, "split_ratios needs three values");
        c.ratios = {r[0], r[1], r[2]};
      } else if (key == "group_by_point") {
        c.group_by_point = value.get<bool>();
      } else if (key == "normalized") {
        c.normalized = value.get<bool>();
      } else if (key == "sr_thresholds_mm") {
        c.sr_thresholds_mm = value.get<std::vector<double>>();
        if (c.sr_thresholds_mm == default_sr_thresholds()) c.sr_thresholds_mm.clear();
      } else if (key == "grating_train_fraction") {
        c.grating_train_fraction = value.get<double>();
      } else if (key == "depth_step_mm") {
        c.depth_step_mm = value.get<double>();
      } else if (key == "calibration_grid") {
        c.calibration_grid = value.get<std::size_t>();
      } else if (key == "depths_per_point") {
        c.depths_per_point = value.get<std::size_t>();
      } else if (key == "repeat_points") {
        c.repeat_points = value.get<std::size_t>();
      } else if (key == "repeat_trials") {
        c.repeat_trials = value.get<std::size_t>();
      } else if (key == "presses_per_board") {
        c.presses_per_board = value.get<std::size_t>();
      } else {
        throw Error(ErrorKind::SchemaError, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("config value has the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace detail

EvalConfig config_from_json_text(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("config is not valid JSON: ") + e.what());
  }
  return detail::config_from_json(j);
}

std::string config_to_json_text(const EvalConfig& config) {
  return detail::dump(detail::config_to_json(config));
}

EvalConfig load_config(const std::filesystem::path& path) {
  return config_from_json_text(detail::read_text(path));
}

void save_config(const EvalConfig& config, const std::filesystem::path& path) {
  detail::write_text(path, config_to_json_text(config));
}

}  // namespace tacbench
