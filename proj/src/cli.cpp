#include "photogest/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "photogest/errors.hpp"
#include "photogest/io.hpp"

namespace photogest::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string features;
  std::string wavelet;
  bool no_segment = false;
  std::optional<double> sample_rate;
};

void add_common(CLI::App* cmd, Common& c, bool pipeline_flags) {
  cmd->add_option("--config", c.config_path, "experiment config JSON")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--out", c.out_dir, "output directory")->required();
  if (!pipeline_flags) return;
  cmd->add_option("--features", c.features, "feature schema")
      ->check(CLI::IsMember({"stat22", "dwt16"}));
  cmd->add_option("--wavelet", c.wavelet, "wavelet family")
      ->check(CLI::IsMember({"haar", "db1", "db2", "db4", "coif2"}));
  cmd->add_flag("--no-segment", c.no_segment, "use ground-truth gesture bounds");
  cmd->add_option("--sample-rate", c.sample_rate, "decimate traces to this rate (Hz)");
}

void apply_overrides(ExperimentConfig& cfg, const Common& c) {
  if (c.seed) cfg.generation.seed = *c.seed;
  if (!c.features.empty()) cfg.pipeline.features = *parse_feature_schema(c.features);
  if (!c.wavelet.empty()) cfg.pipeline.wavelet = *dsp::parse_wavelet(c.wavelet);
  if (c.no_segment) cfg.pipeline.segment = false;
  if (c.sample_rate) cfg.pipeline.sample_rate = *c.sample_rate;
  cfg.validate();
}

ExperimentConfig load_config(const Common& c) {
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : read_config(c.config_path);
  apply_overrides(cfg, c);
  return cfg;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Timestamps go only to the sidecar log so the real outputs stay reproducible.
void append_log(const fs::path& dir, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream log(dir / "run.log", std::ios::app);
  log << "[" << timestamp() << "] " << text << "\n";
}

std::string counts_line(const StageCounts& c) {
  std::ostringstream s;
  s << "traces=" << c.traces << " windows=" << c.windows << " too_short=" << c.too_short
    << " degenerate=" << c.degenerate << " classified=" << c.classified;
  return s.str();
}

void write_e2e_outputs(const fs::path& dir, const E2eResult& r, const ExperimentConfig& cfg) {
  write_text_atomic(dir / "report.json", report_json(r, cfg).dump(2) + "\n");
  write_confusion_csv(dir / "confusion.csv", r.report);
}

int cmd_simulate(const Common& c, std::ostream& out) {
  const auto cfg = load_config(c);
  const auto ds = generate_dataset(cfg.generation);
  write_dataset(c.out_dir, ds, cfg);

  std::map<int, std::vector<double>> durations;
  for (const auto& e : ds.entries)
    durations[e.label].push_back(*e.waveform.meta.gesture_end_s - *e.waveform.meta.gesture_start_s);
  out << "wrote " << ds.entries.size() << " traces to " << c.out_dir << "\n";
  for (const auto& [label, d] : durations) {
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    out << "  " << ds.label_names[static_cast<std::size_t>(label)] << ": n=" << d.size()
        << " gesture_s mean=" << format_number(mean) << " min=" << format_number(*lo)
        << " max=" << format_number(*hi) << "\n";
  }
  append_log(c.out_dir, "simulate seed=" + std::to_string(cfg.generation.seed));
  return kOk;
}

int cmd_e2e(const Common& c, const std::string& dataset_dir, std::ostream& out) {
  ExperimentConfig cfg;
  LabeledDataset ds;
  if (!dataset_dir.empty()) {
    auto loaded = read_dataset(dataset_dir);
    // the dataset's own snapshot unless a config is given; flags override both
    cfg = c.config_path.empty() ? loaded.config : read_config(c.config_path);
    apply_overrides(cfg, c);
    ds = std::move(loaded.dataset);
  } else {
    cfg = load_config(c);
    ds = generate_dataset(cfg.generation);
  }
  const auto result =
      run_e2e(ds, cfg.pipeline, cfg.generation.corruption.lsb(), cfg.generation.seed);
  write_e2e_outputs(c.out_dir, result, cfg);
  out << "accuracy " << format_number(result.report.accuracy) << "\n"
      << "stages " << counts_line(result.counts) << "\n";
  append_log(c.out_dir, "e2e " + counts_line(result.counts) +
                            " accuracy=" + format_number(result.report.accuracy));
  return kOk;
}

int cmd_sweep(const Common& c, const std::string& axis_name, const std::vector<double>& values,
              std::ostream& out) {
  auto cfg = load_config(c);
  SweepSpec sweep;
  if (!axis_name.empty()) {
    const auto axis = parse_sweep_axis(axis_name);
    if (!axis) throw ValidationError("unknown sweep axis '" + axis_name + "'");
    sweep = SweepSpec{*axis, values};
  } else if (cfg.sweep) {
    sweep = *cfg.sweep;
  } else {
    throw ValidationError("sweep needs --axis/--values or a config with a sweep section");
  }
  sweep.validate();
  cfg.sweep = sweep;

  const fs::path dir = c.out_dir;
  std::string csv = "axis_value,accuracy\n";
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    const double v = sweep.values[i];
    const auto point_cfg = apply_axis(cfg, sweep.axis, v);
    const auto r = run_experiment(point_cfg);
    write_text_atomic(dir / ("point_" + std::to_string(i) + ".json"),
                      report_json(r, point_cfg).dump(2) + "\n");
    csv += format_number(v) + "," + format_number(r.report.accuracy) + "\n";
    out << to_string(sweep.axis) << "=" << format_number(v)
        << " accuracy=" << format_number(r.report.accuracy) << "\n";
    append_log(dir, std::string(to_string(sweep.axis)) + "=" + format_number(v) + " " +
                        counts_line(r.counts));
  }
  write_text_atomic(dir / "sweep.csv", csv);
  write_text_atomic(dir / "config.json", json(cfg).dump(2) + "\n");
  return kOk;
}

int cmd_segment(const Common& c, const std::string& trace, const std::string& dataset_dir,
                const std::string& units, std::ostream& out) {
  auto cfg = load_config(c);
  std::vector<std::pair<std::string, Waveform>> streams;
  double lsb = cfg.generation.corruption.lsb();
  if (!trace.empty()) {
    streams.emplace_back(fs::path(trace).filename().string(), read_waveform_csv(trace));
  } else if (!dataset_dir.empty()) {
    auto loaded = read_dataset(dataset_dir);
    lsb = loaded.config.generation.corruption.lsb();
    for (std::size_t i = 0; i < loaded.dataset.entries.size(); ++i)
      streams.emplace_back("trace_" + std::to_string(i), loaded.dataset.entries[i].waveform);
  } else {
    throw ValidationError("segment needs --trace or --dataset");
  }

  std::vector<GestureWindow> all;
  for (const auto& [id, w] : streams) {
    SignalXd x = w.samples;
    if (cfg.pipeline.denoise) {
      int levels = denoise_levels_for(w.sample_rate);
      while (levels > 0 && x.size() < (Index{1} << levels)) --levels;
      if (levels > 0) x = dsp::denoise(x, {cfg.pipeline.wavelet, levels, cfg.pipeline.denoise_mode});
    }
    double scale = 1.0;
    if (units == "lsb" && lsb > 0.0) scale = lsb;
    else if (units == "auto" || units == "lsb") scale = robust_scale(x);
    Waveform clean = w;
    clean.samples = x;
    for (auto& gw : segment(clean, cfg.pipeline.segmenter.scaled(scale > 0.0 ? scale : 1.0), id)) {
      // report times on the trace's own clock
      all.push_back(std::move(gw));
    }
  }
  write_segments_csv(fs::path(c.out_dir) / "segments.csv", all);
  out << "found " << all.size() << " windows in " << streams.size() << " streams\n";
  append_log(c.out_dir, "segment windows=" + std::to_string(all.size()));
  return all.empty() ? kEmpty : kOk;
}

int cmd_denoise(const Common& c, const std::string& trace, int levels, const std::string& mode,
                std::ostream& out) {
  auto cfg = load_config(c);
  Waveform w = read_waveform_csv(trace);
  dsp::DenoiseOptions opt;
  opt.wavelet = cfg.pipeline.wavelet;
  opt.levels = levels > 0 ? levels : denoise_levels_for(w.sample_rate);
  opt.mode = mode == "all_levels" ? dsp::DenoiseMode::AllLevels : dsp::DenoiseMode::Level5Only;
  if (opt.levels > 0) w.samples = dsp::denoise(w.samples, opt);
  const fs::path dest = fs::path(c.out_dir) / fs::path(trace).filename();
  write_waveform_csv(dest, w);
  out << "wrote " << dest.string() << "\n";
  append_log(c.out_dir, "denoise " + trace + " levels=" + std::to_string(opt.levels));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"photogest: solar-cell gesture recognition simulator and pipeline"};
  app.require_subcommand(1);

  Common simulate_opts, e2e_opts, sweep_opts, segment_opts, denoise_opts;
  std::string e2e_dataset, sweep_axis, seg_trace, seg_dataset, seg_units = "lsb", dn_trace,
                                                                   dn_mode = "all_levels";
  std::vector<double> sweep_values;
  int dn_levels = 0;

  auto* simulate = app.add_subcommand("simulate", "synthesize a labeled dataset");
  add_common(simulate, simulate_opts, false);

  auto* e2e = app.add_subcommand("e2e", "run the recognition pipeline with cross-validation");
  add_common(e2e, e2e_opts, true);
  e2e->add_option("--dataset", e2e_dataset, "dataset directory (default: synthesize)");

  auto* sweep = app.add_subcommand("sweep", "repeat e2e over one parameter axis");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--axis", sweep_axis, "intensity|proximity|hand_radius|sample_rate");
  sweep->add_option("--values", sweep_values, "ascending axis values")->delimiter(',');

  auto* seg = app.add_subcommand("segment", "find gesture windows in traces");
  add_common(seg, segment_opts, false);
  seg->add_option("--trace", seg_trace, "trace CSV");
  seg->add_option("--dataset", seg_dataset, "dataset directory");
  seg->add_option("--units", seg_units, "threshold units")
      ->check(CLI::IsMember({"raw", "lsb", "auto"}));

  auto* dn = app.add_subcommand("denoise", "wavelet-denoise a trace");
  add_common(dn, denoise_opts, false);
  dn->add_option("--wavelet", denoise_opts.wavelet, "wavelet family")
      ->check(CLI::IsMember({"haar", "db1", "db2", "db4", "coif2"}));
  dn->add_option("--trace", dn_trace, "trace CSV")->required();
  dn->add_option("--levels", dn_levels, "decomposition depth (default: from sample rate)");
  dn->add_option("--mode", dn_mode, "level5_only|all_levels")
      ->check(CLI::IsMember({"level5_only", "all_levels"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(simulate_opts, out);
    if (*e2e) return cmd_e2e(e2e_opts, e2e_dataset, out);
    if (*sweep) return cmd_sweep(sweep_opts, sweep_axis, sweep_values, out);
    if (*seg) return cmd_segment(segment_opts, seg_trace, seg_dataset, seg_units, out);
    if (*dn) return cmd_denoise(denoise_opts, dn_trace, dn_levels, dn_mode, out);
  } catch (const EmptyResult& e) {
    err << "error: " << e.what() << "\n";
    return kEmpty;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    // validation, domain and unsupported-configuration errors
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace photogest::cli
