#include "photogest/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "photogest/errors.hpp"

namespace photogest {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
  }
  fs::rename(tmp, path);
}

void write_waveform_csv(const fs::path& path, const Waveform& w) {
  std::string text = "t_s,current_mA\n";
  for (Index i = 0; i < w.size(); ++i)
    text += format_number(w.time_at(i)) + "," + format_number(w.samples[i]) + "\n";
  write_text_atomic(path, text);
}

Waveform read_waveform_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace " + path.string());
  std::string line;
  std::vector<double> t, v;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "t_s,current_mA") fail("expected header 't_s,current_mA'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("expected 2 columns");
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double tv = std::stod(a, &used);
      if (used != a.size()) fail("malformed time value");
      const double cv = std::stod(b, &used);
      if (used != b.size()) fail("malformed current value");
      if (!std::isfinite(tv) || !std::isfinite(cv)) fail("non-finite value");
      t.push_back(tv);
      v.push_back(cv);
    } catch (const std::invalid_argument&) {
      fail("not a number");
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }
  if (v.size() < 2) throw IoError(path.string() + ": trace needs at least 2 samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw IoError(path.string() + ": time column must increase");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt + 1e-9) {
      line_no = i + 2;
      fail("time column is not uniformly sampled");
    }

  Waveform w;
  w.samples = Eigen::Map<const SignalXd>(v.data(), static_cast<Index>(v.size()));
  // 9 significant digits in the time column; snap the rate accordingly
  w.sample_rate = std::stod(format_number(1.0 / dt));
  w.t0 = t.front();
  return w;
}

// --- JSON ------------------------------------------------------------------

namespace {

template <typename T>
void get_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

void to_json(json& j, const GestureSpec& g) {
  j = json{{"kind", to_string(g.kind)},
           {"proximity_cm", g.proximity_cm},
           {"displacement_cm", g.displacement_cm},
           {"speed_cm_s", g.speed_cm_s},
           {"hand_radius_cm", g.hand_radius_cm},
           {"hand_angle_rad", g.hand_angle_rad}};
}

void from_json(const json& j, GestureSpec& g) {
  const auto name = j.at("kind").get<std::string>();
  const auto kind = parse_gesture_kind(name);
  if (!kind) throw ValidationError("unknown gesture '" + name + "'");
  g.kind = *kind;
  get_opt(j, "proximity_cm", g.proximity_cm);
  get_opt(j, "displacement_cm", g.displacement_cm);
  get_opt(j, "speed_cm_s", g.speed_cm_s);
  get_opt(j, "hand_radius_cm", g.hand_radius_cm);
  get_opt(j, "hand_angle_rad", g.hand_angle_rad);
}

void to_json(json& j, const SolarCellSpec& c) {
  j = json{{"label", c.label},
           {"radius_cm", c.radius_cm},
           {"area_cm2", c.area()},
           {"standard_current_density_mA_cm2", c.standard_current_density}};
}

void from_json(const json& j, SolarCellSpec& c) {
  get_opt(j, "label", c.label);
  get_opt(j, "radius_cm", c.radius_cm);
  c.area_cm2 = 0.0;
  get_opt(j, "area_cm2", c.area_cm2);
  get_opt(j, "standard_current_density_mA_cm2", c.standard_current_density);
}

void to_json(json& j, const LightEnvironment& e) {
  j = json{{"illuminance_lux", e.illuminance_lux},
           {"lux_per_mW_cm2", e.lux_per_mw_cm2},
           {"reference_irradiance_mW_cm2", LightEnvironment::reference_irradiance}};
}

void from_json(const json& j, LightEnvironment& e) {
  get_opt(j, "illuminance_lux", e.illuminance_lux);
  get_opt(j, "lux_per_mW_cm2", e.lux_per_mw_cm2);
}

void to_json(json& j, const CorruptionModel& m) {
  j = json{{"gaussian_sigma_mA", m.gaussian_sigma},
           {"mains_hz", m.mains_hz},
           {"mains_amplitude_mA", m.mains_amplitude},
           {"gain", m.gain},
           {"adc_bits", m.adc_bits ? json(*m.adc_bits) : json(nullptr)},
           {"adc_full_scale_mA", m.adc_full_scale},
           {"seed", m.seed}};
  if (m.intensity_pattern)
    j["intensity_pattern"] = json{{"levels", m.intensity_pattern->levels},
                                  {"switch_hz", m.intensity_pattern->switch_hz}};
  else
    j["intensity_pattern"] = nullptr;
}

void from_json(const json& j, CorruptionModel& m) {
  get_opt(j, "gaussian_sigma_mA", m.gaussian_sigma);
  get_opt(j, "mains_hz", m.mains_hz);
  get_opt(j, "mains_amplitude_mA", m.mains_amplitude);
  get_opt(j, "gain", m.gain);
  if (j.contains("adc_bits"))
    m.adc_bits = j.at("adc_bits").is_null() ? std::nullopt
                                            : std::optional<int>(j.at("adc_bits").get<int>());
  get_opt(j, "adc_full_scale_mA", m.adc_full_scale);
  get_opt(j, "seed", m.seed);
  if (j.contains("intensity_pattern")) {
    const auto& p = j.at("intensity_pattern");
    if (p.is_null()) {
      m.intensity_pattern.reset();
    } else {
      IntensityPattern ip;
      p.at("levels").get_to(ip.levels);
      get_opt(p, "switch_hz", ip.switch_hz);
      m.intensity_pattern = ip;
    }
  }
}

void to_json(json& j, const GenerationConfig& g) {
  j = json{{"gestures", g.templates},
           {"cell", g.cell},
           {"environment", g.environment},
           {"n_per_gesture", g.n_per_gesture},
           {"jitter", {{"speed", g.jitter.speed}, {"proximity", g.jitter.proximity}}},
           {"corruption", g.corruption},
           {"sample_rate_hz", g.sample_rate},
           {"pauses", {{"before_s", g.pauses.before_s}, {"after_s", g.pauses.after_s}}},
           {"seed", g.seed}};
}

void from_json(const json& j, GenerationConfig& g) {
  get_opt(j, "gestures", g.templates);
  get_opt(j, "cell", g.cell);
  get_opt(j, "environment", g.environment);
  get_opt(j, "n_per_gesture", g.n_per_gesture);
  if (j.contains("jitter")) {
    get_opt(j.at("jitter"), "speed", g.jitter.speed);
    get_opt(j.at("jitter"), "proximity", g.jitter.proximity);
  }
  get_opt(j, "corruption", g.corruption);
  get_opt(j, "sample_rate_hz", g.sample_rate);
  if (j.contains("pauses")) {
    get_opt(j.at("pauses"), "before_s", g.pauses.before_s);
    get_opt(j.at("pauses"), "after_s", g.pauses.after_s);
  }
  get_opt(j, "seed", g.seed);
}

void to_json(json& j, const SegmenterConfig& s) {
  j = json{{"window_s", s.window_s},         {"stride", s.stride},
           {"std_threshold", s.std_threshold}, {"mean_threshold", s.mean_threshold},
           {"min_len_s", s.min_len_s},       {"max_len_s", s.max_len_s}};
}

void from_json(const json& j, SegmenterConfig& s) {
  get_opt(j, "window_s", s.window_s);
  get_opt(j, "stride", s.stride);
  get_opt(j, "std_threshold", s.std_threshold);
  get_opt(j, "mean_threshold", s.mean_threshold);
  get_opt(j, "min_len_s", s.min_len_s);
  get_opt(j, "max_len_s", s.max_len_s);
}

namespace {

std::string_view units_name(ThresholdUnits u) {
  switch (u) {
    case ThresholdUnits::Raw: return "raw";
    case ThresholdUnits::Lsb: return "lsb";
    case ThresholdUnits::Auto: return "auto";
  }
  return "raw";
}

}  // namespace

void to_json(json& j, const PipelineOptions& p) {
  j = json{{"denoise", p.denoise},
           {"denoise_mode", p.denoise_mode == dsp::DenoiseMode::AllLevels ? "all_levels"
                                                                          : "level5_only"},
           {"wavelet", dsp::to_string(p.wavelet)},
           {"segment", p.segment},
           {"segmenter", p.segmenter},
           {"threshold_units", units_name(p.threshold_units)},
           {"align", p.align},
           {"alignment_preview_len", p.alignment_preview_len},
           {"dtw_band", p.dtw_band ? json(*p.dtw_band) : json(nullptr)},
           {"features", to_string(p.features)},
           {"knn_k", p.knn_k},
           {"folds", p.folds},
           {"sample_rate_hz", p.sample_rate ? json(*p.sample_rate) : json(nullptr)}};
}

void from_json(const json& j, PipelineOptions& p) {
  get_opt(j, "denoise", p.denoise);
  if (j.contains("denoise_mode")) {
    const auto m = j.at("denoise_mode").get<std::string>();
    if (m == "all_levels")
      p.denoise_mode = dsp::DenoiseMode::AllLevels;
    else if (m == "level5_only")
      p.denoise_mode = dsp::DenoiseMode::Level5Only;
    else
      throw ValidationError("unknown denoise mode '" + m + "'");
  }
  if (j.contains("wavelet")) {
    const auto name = j.at("wavelet").get<std::string>();
    const auto w = dsp::parse_wavelet(name);
    if (!w) throw ValidationError("unknown wavelet '" + name + "'");
    p.wavelet = *w;
  }
  get_opt(j, "segment", p.segment);
  get_opt(j, "segmenter", p.segmenter);
  if (j.contains("threshold_units")) {
    const auto u = j.at("threshold_units").get<std::string>();
    if (u == "raw")
      p.threshold_units = ThresholdUnits::Raw;
    else if (u == "lsb")
      p.threshold_units = ThresholdUnits::Lsb;
    else if (u == "auto")
      p.threshold_units = ThresholdUnits::Auto;
    else
      throw ValidationError("unknown threshold units '" + u + "'");
  }
  get_opt(j, "align", p.align);
  get_opt(j, "alignment_preview_len", p.alignment_preview_len);
  if (j.contains("dtw_band"))
    p.dtw_band = j.at("dtw_band").is_null() ? std::nullopt
                                            : std::optional<Index>(j.at("dtw_band").get<Index>());
  if (j.contains("features")) {
    const auto name = j.at("features").get<std::string>();
    const auto f = parse_feature_schema(name);
    if (!f) throw ValidationError("unknown feature schema '" + name + "'");
    p.features = *f;
  }
  get_opt(j, "knn_k", p.knn_k);
  get_opt(j, "folds", p.folds);
  if (j.contains("sample_rate_hz"))
    p.sample_rate = j.at("sample_rate_hz").is_null()
                        ? std::nullopt
                        : std::optional<double>(j.at("sample_rate_hz").get<double>());
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"scenario", c.scenario}, {"generation", c.generation}, {"pipeline", c.pipeline}};
  if (c.sweep)
    j["sweep"] = json{{"axis", to_string(c.sweep->axis)}, {"values", c.sweep->values}};
  else
    j["sweep"] = nullptr;
}

void from_json(const json& j, ExperimentConfig& c) {
  get_opt(j, "scenario", c.scenario);
  get_opt(j, "generation", c.generation);
  get_opt(j, "pipeline", c.pipeline);
  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    const auto& s = j.at("sweep");
    const auto name = s.at("axis").get<std::string>();
    const auto axis = parse_sweep_axis(name);
    if (!axis) throw ValidationError("unknown sweep axis '" + name + "'");
    c.sweep = SweepSpec{*axis, s.at("values").get<std::vector<double>>()};
  }
}

ExperimentConfig read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  try {
    ExperimentConfig cfg = j.get<ExperimentConfig>();
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_dataset(const fs::path& dir, const LabeledDataset& ds, const ExperimentConfig& cfg) {
  ds.validate();
  json entries = json::array();
  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    const auto& e = ds.entries[i];
    char name[64];
    std::snprintf(name, sizeof name, "traces/%05zu_%s.csv", i,
                  ds.label_names[static_cast<std::size_t>(e.label)].c_str());
    write_waveform_csv(dir / name, e.waveform);
    json entry{{"trace", name}, {"label", ds.label_names[static_cast<std::size_t>(e.label)]}};
    const auto& m = e.waveform.meta;
    entry["gesture_start_s"] = m.gesture_start_s ? json(*m.gesture_start_s) : json(nullptr);
    entry["gesture_end_s"] = m.gesture_end_s ? json(*m.gesture_end_s) : json(nullptr);
    entry["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    entries.push_back(std::move(entry));
  }
  json manifest{{"format", kManifestFormat},
                {"seed", cfg.generation.seed},
                {"config", cfg},
                {"label_names", ds.label_names},
                {"entries", std::move(entries)}};
  write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

LoadedDataset read_dataset(const fs::path& dir) {
  const fs::path manifest_path = fs::is_directory(dir) ? dir / "manifest.json" : dir;
  const fs::path root = manifest_path.parent_path();
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open manifest " + manifest_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError(manifest_path.string() + ": " + e.what());
  }
  LoadedDataset out;
  try {
    if (j.value("format", "") != kManifestFormat)
      throw IoError(manifest_path.string() + ": unsupported manifest format");
    out.config = j.at("config").get<ExperimentConfig>();
    out.dataset.label_names = j.at("label_names").get<std::vector<std::string>>();
    for (const auto& e : j.at("entries")) {
      const auto label = e.at("label").get<std::string>();
      const auto it =
          std::find(out.dataset.label_names.begin(), out.dataset.label_names.end(), label);
      if (it == out.dataset.label_names.end())
        throw IoError(manifest_path.string() + ": entry label '" + label + "' not in label set");
      DatasetEntry entry;
      entry.label = static_cast<int>(it - out.dataset.label_names.begin());
      entry.waveform = read_waveform_csv(root / e.at("trace").get<std::string>());
      entry.waveform.meta.cell_label = out.config.generation.cell.label;
      entry.waveform.meta.gesture = parse_gesture_kind(label);
      if (e.contains("gesture_start_s") && !e["gesture_start_s"].is_null())
        entry.waveform.meta.gesture_start_s = e["gesture_start_s"].get<double>();
      if (e.contains("gesture_end_s") && !e["gesture_end_s"].is_null())
        entry.waveform.meta.gesture_end_s = e["gesture_end_s"].get<double>();
      out.dataset.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw IoError(manifest_path.string() + ": " + e.what());
  }
  return out;
}

json report_json(const E2eResult& result, const ExperimentConfig& cfg) {
  const auto& r = result.report;
  json counts = json::array();
  for (Index i = 0; i < r.confusion.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < r.confusion.cols(); ++k) row.push_back(r.confusion(i, k));
    counts.push_back(std::move(row));
  }
  return json{{"accuracy", std::stod(format_number(r.accuracy))},
              {"label_order", r.label_names},
              {"confusion_counts", std::move(counts)},
              {"seed", r.seed},
              {"stage_counts",
               {{"traces", result.counts.traces},
                {"windows", result.counts.windows},
                {"too_short", result.counts.too_short},
                {"degenerate", result.counts.degenerate},
                {"classified", result.counts.classified}}},
              {"config", cfg}};
}

void write_confusion_csv(const fs::path& path, const EvalReport& report) {
  std::string text = "truth";
  for (const auto& n : report.label_names) text += "," + n;
  text += "\n";
  for (Index i = 0; i < report.confusion.rows(); ++i) {
    text += report.label_names[static_cast<std::size_t>(i)];
    for (Index k = 0; k < report.confusion.cols(); ++k)
      text += "," + std::to_string(report.confusion(i, k));
    text += "\n";
  }
  write_text_atomic(path, text);
}

void write_features_csv(const fs::path& path, const LabeledFeatures& data, FeatureSchema schema) {
  std::string text;
  if (schema == FeatureSchema::Stat22) {
    for (auto n : stat22_names()) text += std::string(n) + ",";
  } else {
    for (Index i = 0; i < kDwtFeatureCount; ++i) text += "d5_" + std::to_string(i) + ",";
  }
  text += "label\n";
  for (Index r = 0; r < data.rows.rows(); ++r) {
    for (Index c = 0; c < data.rows.cols(); ++c) text += format_number(data.rows(r, c)) + ",";
    text += data.label_names[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(r)])] +
            "\n";
  }
  write_text_atomic(path, text);
}

void write_segments_csv(const fs::path& path, const std::vector<GestureWindow>& windows) {
  std::string text = "source,start_s,end_s\n";
  for (const auto& w : windows)
    text += w.source_id + "," + format_number(w.start_s()) + "," + format_number(w.end_s()) + "\n";
  write_text_atomic(path, text);
}

}  // namespace photogest
