#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "tacbench/baseline_model.hpp"
#include "tacbench/config.hpp"
#include "tacbench/dataset.hpp"
#include "tacbench/emit.hpp"
#include "tacbench/error.hpp"
#include "tacbench/gratings.hpp"
#include "tacbench/metrics.hpp"
#include "tacbench/normalization.hpp"
#include "tacbench/prediction_set.hpp"
#include "tacbench/radar.hpp"
#include "tacbench/report.hpp"
#include "tacbench/resolution_classifier.hpp"
#include "tacbench/rng.hpp"
#include "tacbench/robustness.hpp"
#include "tacbench/simulator.hpp"
#include "tacbench/spatial.hpp"
#include "tacbench/split.hpp"
#include "tacbench/sr_curve.hpp"

namespace tacbench::cli {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_path;
  std::string out_dir = "out";
};

EvalConfig effective_config(const Globals& g) {
  EvalConfig c = g.config_path.empty() ? EvalConfig{} : load_config(g.config_path);
  if (g.seed_given) c.seed = g.seed;
  c.validate();
  return c;
}

SensorDataset load_dir(const fs::path& dir) {
  return load_dataset(dir / "manifest.json", dir / "samples.csv", LoadOptions{.strict = true});
}

void save_dir(const SensorDataset& ds, const fs::path& dir) {
  save_dataset(ds, dir / "manifest.json", dir / "samples.csv");
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

/// Samples under evaluation plus the normalization that goes with them: the
/// test split and train-split ranges when a split is given, else everything.
struct Scope {
  std::vector<ProbeSample> samples;
  std::optional<NormParams> norm;
};

Scope make_scope(const SensorDataset& ds, const std::string& split_path, const EvalConfig& cfg,
                 bool raw_units) {
  Scope scope;
  SplitAssignment split;
  if (!split_path.empty()) {
    split = load_split(split_path);
    check_split_covers(split, ds);
    scope.samples = ds.subset(split.ids(Split::Test));
  } else {
    for (const auto& s : ds.samples()) split.assignment[s.sample_id] = Split::Train;
    scope.samples.assign(ds.samples().begin(), ds.samples().end());
  }
  if (cfg.normalized && !raw_units) scope.norm = fit_minmax(ds, split);
  return scope;
}

void write_section(const Globals& g, const std::string& name, const SensorManifest& manifest,
                   const EvalConfig& cfg, ReportSections sections) {
  save_report(EvalReport{manifest, cfg, std::move(sections)},
              fs::path(g.out_dir) / "sections" / (name + ".json"));
}

std::string group_scores_csv(const CalibrationReport& r) {
  std::ostringstream out;
  out << "group,mae,r2,smape_pct\n";
  for (const auto& [g, s] : r.groups) {
    out << to_string(g) << ',' << s.mae << ',' << s.r2 << ',' << s.smape << '\n';
  }
  return out.str();
}

std::string sr_curve_csv(const SRCurve& c) {
  std::ostringstream out;
  out.precision(17);
  out << "threshold_mm,accuracy\n";
  for (std::size_t i = 0; i < c.thresholds_mm.size(); ++i) {
    out << c.thresholds_mm[i] << ',' << c.accuracy[i] << '\n';
  }
  return out.str();
}

// ---- commands -------------------------------------------------------------

struct SimulateArgs {
  std::string spec;
  bool direct = false;
};

void cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  VirtualSensor sensor(load_simspec(a.spec));
  const fs::path root(g.out_dir);
  const std::uint64_t seed = derive_seed(cfg.seed, "simulate");

  const CalibrationOptions calib{cfg.calibration_grid, cfg.depths_per_point};
  const auto calibration = run_calibration_protocol(sensor, calib, seed);
  save_dir(calibration, root / "calibration");
  out << "calibration: " << calibration.size() << " samples\n";

  for (const auto& [scene, gain] : sensor.spec().scene_gains) {
    if (scene == sensor.spec().baseline_scene) continue;
    sensor.apply_scene(scene);
    const auto ds = run_calibration_protocol(sensor, calib, seed);
    save_dir(ds, root / "scenes" / scene);
    out << "scene " << scene << ": " << ds.size() << " samples\n";
  }
  sensor.apply_scene(sensor.spec().baseline_scene);

  RepeatabilityOptions rep;
  rep.points = cfg.repeat_points;
  rep.trials = cfg.repeat_trials;
  rep.depth_step_mm = cfg.depth_step_mm;
  const auto repeat = run_repeatability_protocol(sensor, rep, seed);
  save_dir(repeat, root / "repeatability");
  out << "repeatability: " << repeat.size() << " samples\n";
  if (a.direct) {
    save_predictions(direct_predictions(sensor, repeat.samples(), seed),
                     root / "repeatability" / "direct_predictions.csv");
  }

  GratingOptions gratings;
  gratings.presses_per_board = cfg.presses_per_board;
  const auto presses = run_grating_protocol(sensor, gratings, seed);
  save_gratings(presses, root / "gratings.csv");
  out << "gratings: " << presses.size() << " presses\n";

  save_simspec(sensor.spec(), root / "simspec.json");
  save_config(cfg, root / "config.json");
}

void cmd_split(const Globals& g, const std::string& data, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(data);
  const auto split = split_dataset(ds, cfg.ratios, derive_seed(cfg.seed, "split"), cfg.group_by_point);
  save_split(split, fs::path(g.out_dir) / "split.csv");
  const auto counts = split.counts();
  out << "train " << counts[0] << ", val " << counts[1] << ", test " << counts[2] << '\n';
}

void cmd_fit(const Globals& g, const std::string& data, const std::string& split_path,
             std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(data);
  const auto split = load_split(split_path);
  check_split_covers(split, ds);
  const auto norm = fit_minmax(ds, split);
  const auto model = BaselineModel::fit(ds, split, norm, cfg.k);
  model.save(fs::path(g.out_dir) / "model.json");
  out << "fitted k=" << model.k() << " on " << model.train_size() << " samples\n";
}

void cmd_predict(const Globals& g, const std::string& model_path, const std::string& data,
                 const std::string& output, std::ostream& out) {
  const auto model = BaselineModel::load(model_path);
  const auto ds = load_dir(data);
  const auto preds = model.predict(ds.samples());
  const fs::path path = output.empty() ? fs::path(g.out_dir) / "predictions.csv" : fs::path(output);
  save_predictions(preds, path);
  out << "predicted " << preds.size() << " samples -> " << path.string() << '\n';
}

struct EvalArgs {
  std::string data;
  std::string predictions;
  std::string split;
  std::string gratings;
  std::string pairs;
  std::string scenes;
  std::string model;
  bool raw_units = false;
};

void cmd_eval_calib(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(a.data);
  const auto preds = load_predictions(a.predictions);
  validate_against(preds, ds);
  const auto scope = make_scope(ds, a.split, cfg, a.raw_units);
  const auto report = channel_report(scope.samples, preds, scope.norm);
  write_file(fs::path(g.out_dir) / "calibration.csv", group_scores_csv(report));
  ReportSections s;
  s.calibration = report;
  write_section(g, "calibration", ds.manifest(), cfg, std::move(s));
  out << group_scores_csv(report);
}

void cmd_eval_sr(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  std::vector<SRPair> pairs;
  if (!a.pairs.empty()) {
    pairs = load_sr_pairs(a.pairs);
  } else {
    if (a.gratings.empty()) throw Error(ErrorKind::InvalidArgument, "eval sr needs --gratings or --pairs");
    const auto presses = load_gratings(a.gratings);
    const auto [train, test] =
        split_gratings(presses, cfg.grating_train_fraction, derive_seed(cfg.seed, "sr"));
    const auto classes = grating_resolutions();
    const auto clf = ResolutionClassifier::fit(train, classes);
    pairs = clf.evaluate(test);
    save_sr_pairs(pairs, fs::path(g.out_dir) / "sr_pairs.csv");
  }
  const auto thresholds = cfg.thresholds();
  const auto curve = sr_curve(pairs, thresholds);
  write_file(fs::path(g.out_dir) / "sr_curve.csv", sr_curve_csv(curve));
  SensorManifest manifest;
  if (!a.data.empty()) manifest = load_manifest(fs::path(a.data) / "manifest.json");
  ReportSections s;
  s.sr = curve;
  write_section(g, "sr", manifest, cfg, std::move(s));
  out << "SR(0.05) = " << curve.at(0.05) << " over " << curve.pair_count << " pairs\n";
}

void cmd_eval_sensitivity(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(a.data);
  GridSpec grid;
  grid.cell_mm = ds.manifest().max_radius_mm * cfg.cell_fraction;
  grid.min_occupancy = cfg.min_occupancy;
  const auto map = sensitivity_map(ds.samples(), ds.manifest(), grid, cfg.f_min_n);
  emit(map, EmitFormat::Csv, fs::path(g.out_dir) / "heatmap.csv");
  emit(map, EmitFormat::Svg, fs::path(g.out_dir) / "heatmap.svg");
  ReportSections s;
  s.sensitivity = summarize(map, cfg.f_min_n);
  write_section(g, "sensitivity", ds.manifest(), cfg, std::move(s));
  out << "occupied bins " << map.bins.size() << ", U = "
      << (map.uniformity_u ? std::to_string(*map.uniformity_u) : std::string("n/a")) << '\n';
}

void cmd_eval_spatial(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(a.data);
  const auto preds = load_predictions(a.predictions);
  validate_against(preds, ds);
  const auto scope = make_scope(ds, a.split, cfg, a.raw_units);
  const auto report =
      spatial_report(scope.samples, preds, ds.manifest(), scope.norm, cfg.bin_width, cfg.smoothing_window);
  for (const auto& [group, r] : report.groups) {
    const std::string name(to_string(group));
    write_file(fs::path(g.out_dir) / ("binseries_" + name + ".csv"),
               format_bin_series(r.distance, cfg.smoothing_window) +
                   format_bin_series(r.depth, cfg.smoothing_window).substr(
                       std::string_view("axis,bin_center,mean_mae,count,smoothed_mae\n").size()));
    out << "R_spatial " << name << " = " << r.r_spatial << '\n';
  }
  if (report.clamped_values > 0) {
    out << "note: " << report.clamped_values << " normalized values were clamped into [0, 1]\n";
  }
  ReportSections s;
  s.spatial = summarize(report);
  write_section(g, "spatial", ds.manifest(), cfg, std::move(s));
}

SceneEvaluation evaluate_scene(const std::string& id, const SensorDataset& ds,
                               const BaselineModel& model, const Scope& scope) {
  std::vector<std::uint64_t> ids;
  for (const auto& s : scope.samples) ids.push_back(s.sample_id);
  const auto samples = ds.subset(ids);
  const auto preds = model.predict(samples);
  const auto report = channel_report(samples, preds, scope.norm);
  SceneEvaluation e;
  e.scene_id = id;
  e.intensity = mean_intensity(samples);
  for (const auto& [group, scores] : report.groups) e.mae[group] = scores.mae;
  return e;
}

void cmd_eval_light(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(a.data);
  LightReport report;
  if (ds.manifest().opaque) {
    report = opaque_light_report();
    out << "opaque sensor: lighting robustness excluded (nominal 1)\n";
  } else {
    const auto model = BaselineModel::load(a.model);
    const auto scope = make_scope(ds, a.split, cfg, a.raw_units);
    const std::string baseline_id =
        ds.samples().empty() ? std::string("baseline") : ds.samples().front().scene_id;
    const auto baseline = evaluate_scene(baseline_id, ds, model, scope);

    std::vector<fs::path> dirs;
    if (!a.scenes.empty()) {
      for (const auto& entry : fs::directory_iterator(a.scenes)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
      }
    }
    std::sort(dirs.begin(), dirs.end());
    std::vector<SceneEvaluation> scenes;
    for (const auto& dir : dirs) {
      const auto scene_ds = load_dir(dir);
      scenes.push_back(evaluate_scene(dir.filename().string(), scene_ds, model, scope));
    }
    report = light_report(baseline, scenes);
    for (const auto& [group, m] : report.mean) {
      out << "mean " << to_string(group) << ": degradation " << m.degradation_pct << "%, R_light "
          << (m.r_light ? std::to_string(*m.r_light) : std::string("UNDEFINED")) << '\n';
    }
  }
  write_file(fs::path(g.out_dir) / "light_report.csv", format_light_report(report));
  ReportSections s;
  s.light = report;
  write_section(g, "light", ds.manifest(), cfg, std::move(s));
}

void cmd_eval_repeat(const Globals& g, const EvalArgs& a, std::ostream& out) {
  const auto cfg = effective_config(g);
  const auto ds = load_dir(a.data);
  const auto preds = load_predictions(a.predictions);
  validate_against(preds, ds);
  const auto groups = extract_trial_groups(ds.samples(), preds);
  const auto report = repeatability_report(groups, ds.manifest());
  write_file(fs::path(g.out_dir) / "repeatability.csv", format_repeatability(report));
  write_file(fs::path(g.out_dir) / "rep_depth_curve.csv", format_depth_curves(report));
  ReportSections s;
  s.repeatability = report;
  write_section(g, "repeatability", ds.manifest(), cfg, std::move(s));
  for (const auto& [group, r] : report.groups) out << "Rep " << to_string(group) << " = " << r.rep << '\n';
}

void cmd_report(const Globals& g, const std::string& data, const std::string& sections_dir,
                std::ostream& out) {
  const auto cfg = effective_config(g);
  const fs::path dir = sections_dir.empty() ? fs::path(g.out_dir) / "sections" : fs::path(sections_dir);
  if (!fs::is_directory(dir)) throw Error(ErrorKind::IoError, "no sections directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  ReportSections sections;
  for (const auto& f : files) merge_sections(sections, load_report(f, false).sections);
  const auto manifest = load_manifest(fs::path(data) / "manifest.json");
  const auto report = assemble_report(manifest, cfg, std::move(sections));
  emit(report, EmitFormat::Json, fs::path(g.out_dir) / "report.json");
  emit(report, EmitFormat::Csv, fs::path(g.out_dir) / "report.csv");
  out << "report for " << manifest.sensor_name << " written with " << files.size() << " sections\n";
}

void cmd_radar(const Globals& g, const std::vector<std::string>& paths, std::ostream& out) {
  std::vector<EvalReport> reports;
  for (const auto& p : paths) reports.push_back(load_report(p));
  std::vector<RadarAxes> themes;
  for (auto t : kAllThemes) themes.push_back(radar_axes(reports, t));
  const fs::path root(g.out_dir);
  emit(themes, EmitFormat::Csv, root / "radar.csv");
  emit(themes, EmitFormat::Json, root / "radar.json");
  emit(themes, EmitFormat::Svg, root / "radar.svg");
  out << "radar over " << reports.size() << " sensors\n";
}

void cmd_config(const Globals& g, bool print, std::ostream& out) {
  const auto cfg = effective_config(g);
  if (print) {
    out << config_to_json_text(cfg);
  } else {
    save_config(cfg, fs::path(g.out_dir) / "config.json");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluation toolkit for vision-based tactile sensors", "tacbench"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed; every stage derives its own");
  app.add_option("--config", g.config_path, "config.json with tolerances, windows and protocol sizes")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Run all simulator protocols from a simspec");
  sim->add_option("--spec", sim_args.spec, "simspec.json")->required()->check(CLI::ExistingFile);
  sim->add_flag("--direct", sim_args.direct,
                "Also write prediction-level noisy outputs for the repeatability set");

  std::string data;
  std::string split_path;
  auto* split = app.add_subcommand("split", "Assign samples to train/val/test");
  split->add_option("--data", data, "Dataset directory (manifest.json, samples.csv)")->required();

  auto* fit = app.add_subcommand("fit-baseline", "Fit the k-NN baseline on the train split");
  fit->add_option("--data", data, "Dataset directory")->required();
  fit->add_option("--split", split_path, "split.csv")->required()->check(CLI::ExistingFile);

  std::string model_path;
  std::string output;
  auto* predict = app.add_subcommand("predict", "Predict every sample of a dataset");
  predict->add_option("--model", model_path, "model.json")->required()->check(CLI::ExistingFile);
  predict->add_option("--data", data, "Dataset directory")->required();
  predict->add_option("--output", output, "Output predictions.csv (default <out>/predictions.csv)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate one metric family");
  eval->require_subcommand(1);
  auto* calib = eval->add_subcommand("calib", "MAE / R^2 / sMAPE per channel group");
  calib->add_option("--data", ea.data, "Dataset directory")->required();
  calib->add_option("--predictions", ea.predictions, "predictions.csv")->required();
  calib->add_option("--split", ea.split, "split.csv; evaluates the test split");
  calib->add_flag("--raw-units", ea.raw_units, "Score raw units instead of normalized");
  auto* sr = eval->add_subcommand("sr", "Spatial-resolution accuracy curve");
  sr->add_option("--gratings", ea.gratings, "gratings.csv");
  sr->add_option("--pairs", ea.pairs, "sr_pairs.csv from an external classifier");
  sr->add_option("--data", ea.data, "Dataset directory for the manifest echo");
  auto* sens = eval->add_subcommand("sensitivity", "Sensitivity heatmap and uniformity");
  sens->add_option("--data", ea.data, "Dataset directory")->required();
  auto* spatial = eval->add_subcommand("spatial", "Binned errors and spatial robustness");
  spatial->add_option("--data", ea.data, "Dataset directory")->required();
  spatial->add_option("--predictions", ea.predictions, "predictions.csv")->required();
  spatial->add_option("--split", ea.split, "split.csv; evaluates the test split");
  spatial->add_flag("--raw-units", ea.raw_units, "Score raw units instead of normalized");
  auto* light = eval->add_subcommand("light", "Lighting robustness across scenes");
  light->add_option("--data", ea.data, "Baseline-scene dataset directory")->required();
  light->add_option("--scenes", ea.scenes, "Directory of per-scene dataset directories");
  light->add_option("--model", ea.model, "model.json");
  light->add_option("--split", ea.split, "split.csv; evaluates the test split");
  light->add_flag("--raw-units", ea.raw_units, "Score raw units instead of normalized");
  auto* repeat = eval->add_subcommand("repeat", "Repeatability over repeated trials");
  repeat->add_option("--data", ea.data, "Repeatability dataset directory")->required();
  repeat->add_option("--predictions", ea.predictions, "predictions.csv")->required();

  std::string sections_dir;
  auto* report = app.add_subcommand("report", "Assemble report.json from evaluated sections");
  report->add_option("--data", data, "Dataset directory for the manifest echo")->required();
  report->add_option("--sections", sections_dir, "Directory of section files (default <out>/sections)");

  std::vector<std::string> report_paths;
  auto* radar = app.add_subcommand("radar", "Normalize radar axes across sensor reports");
  radar->add_option("--reports", report_paths, "report.json files")->required()->expected(2, -1);

  bool print_config = false;
  auto* config = app.add_subcommand("config", "Write the effective configuration");
  config->add_flag("--print", print_config, "Print instead of writing <out>/config.json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*sim) {
      cmd_simulate(g, sim_args, out);
    } else if (*split) {
      cmd_split(g, data, out);
    } else if (*fit) {
      cmd_fit(g, data, split_path, out);
    } else if (*predict) {
      cmd_predict(g, model_path, data, output, out);
    } else if (*eval) {
      if (*calib) cmd_eval_calib(g, ea, out);
      if (*sr) cmd_eval_sr(g, ea, out);
      if (*sens) cmd_eval_sensitivity(g, ea, out);
      if (*spatial) cmd_eval_spatial(g, ea, out);
      if (*light) {
        if (ea.model.empty() && !load_manifest(fs::path(ea.data) / "manifest.json").opaque) {
          throw Error(ErrorKind::InvalidArgument, "eval light needs --model");
        }
        cmd_eval_light(g, ea, out);
      }
      if (*repeat) cmd_eval_repeat(g, ea, out);
    } else if (*report) {
      cmd_report(g, data, sections_dir, out);
    } else if (*radar) {
      cmd_radar(g, report_paths, out);
    } else if (*config) {
      cmd_config(g, print_config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tacbench::cli
