#include "photogest/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "photogest/dsp/dtw.hpp"
#include "photogest/dsp/normalize.hpp"
#include "photogest/dsp/spline.hpp"
#include "photogest/errors.hpp"

namespace photogest {

int denoise_levels_for(double sample_rate) {
  // deepest detail band must stay above the ~7.8 Hz gesture band edge
  constexpr double kGestureBandHz = 250.0 / 32.0;
  const double ratio = (sample_rate / 2.0) / kGestureBandHz;
  if (ratio < 2.0) return 0;
  return std::min(5, static_cast<int>(std::floor(std::log2(ratio) + 1e-9)));
}

namespace {

SignalXd normalize_or_zero(const SignalXd& x, bool& degenerate) {
  try {
    degenerate = false;
    return dsp::zscore(x);
  } catch (const DegenerateInput&) {
    degenerate = true;
    return SignalXd::Zero(x.size());
  }
}

Waveform at_rate(const Waveform& w, const std::optional<double>& rate) {
  if (!rate || *rate == w.sample_rate) return w;
  const double ratio = w.sample_rate / *rate;
  const auto factor = static_cast<int>(std::llround(ratio));
  if (factor < 1 || std::abs(ratio - factor) > 1e-9)
    throw ValidationError("target sample rate must divide the trace rate evenly");
  return decimate(w, factor);
}

SegmenterConfig segmenter_for(const PipelineOptions& opt, const SignalXd& x, double lsb) {
  switch (opt.threshold_units) {
    case ThresholdUnits::Raw:
      return opt.segmenter;
    case ThresholdUnits::Lsb:
      if (lsb > 0.0) return opt.segmenter.scaled(lsb);
      [[fallthrough]];  // no ADC information: fall back to the robust scale
    case ThresholdUnits::Auto: {
      const double s = robust_scale(x);
      return opt.segmenter.scaled(s > 0.0 ? s : 1.0);
    }
  }
  return opt.segmenter;
}

SignalXd featurize(const SignalXd& window, double duration_s, const PipelineOptions& opt) {
  if (opt.features == FeatureSchema::Dwt16) return wavelet_features(window, opt.wavelet).values;
  const double rate = duration_s > 0.0 ? static_cast<double>(kFeatureWindow - 1) / duration_s
                                       : static_cast<double>(kFeatureWindow);
  return statistical_features(window, rate).values;
}

// Fold-local DTW alignment against per-class medoid references.
class Aligner {
 public:
  Aligner(const std::vector<PreparedWindow>& windows, int num_classes, const PipelineOptions& opt)
      : windows_(windows), opt_(opt), num_classes_(num_classes) {
    // within-class preview distances, computed once for every fold
    members_.resize(static_cast<std::size_t>(num_classes));
    for (std::size_t i = 0; i < windows.size(); ++i)
      members_[static_cast<std::size_t>(windows[i].label)].push_back(i);
    for (const auto& m : members_) {
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = a + 1; b < m.size(); ++b) {
          const double d = preview_distance(m[a], m[b]);
          preview_dist_[{m[a], m[b]}] = d;
          preview_dist_[{m[b], m[a]}] = d;
        }
    }
  }

  std::pair<FeatureMatrix, FeatureMatrix> operator()(const std::vector<Index>& train,
                                                     const std::vector<Index>& test) {
    const auto refs = medoids(train);
    const Index width = feature_width(opt_.features);
    FeatureMatrix train_x(static_cast<Index>(train.size()), width);
    FeatureMatrix test_x(static_cast<Index>(test.size()), width);
    for (std::size_t r = 0; r < train.size(); ++r) {
      const auto i = static_cast<std::size_t>(train[r]);
      const auto ref = refs[static_cast<std::size_t>(windows_[i].label)];
      train_x.row(static_cast<Index>(r)) = aligned_features(i, *ref).transpose();
    }
    for (std::size_t r = 0; r < test.size(); ++r) {
      const auto i = static_cast<std::size_t>(test[r]);
      std::optional<std::size_t> best;
      double best_d = 0.0;
      for (const auto& ref : refs) {
        if (!ref) continue;
        const double d = preview_distance(i, *ref);
        if (!best || d < best_d) {
          best = *ref;
          best_d = d;
        }
      }
      test_x.row(static_cast<Index>(r)) = aligned_features(i, *best).transpose();
    }
    return {std::move(train_x), std::move(test_x)};
  }

 private:
  double preview_distance(std::size_t a, std::size_t b) const {
    return dsp::dtw_distance(windows_[a].preview, windows_[b].preview);
  }

  std::vector<std::optional<std::size_t>> medoids(const std::vector<Index>& train) const {
    std::vector<std::vector<std::size_t>> in_fold(static_cast<std::size_t>(num_classes_));
    for (Index i : train)
      in_fold[static_cast<std::size_t>(windows_[static_cast<std::size_t>(i)].label)].push_back(
          static_cast<std::size_t>(i));
    std::vector<std::optional<std::size_t>> out(static_cast<std::size_t>(num_classes_));
    for (std::size_t c = 0; c < in_fold.size(); ++c) {
      double best_sum = 0.0;
      for (std::size_t a : in_fold[c]) {
        double sum = 0.0;
        for (std::size_t b : in_fold[c])
          if (a != b) sum += preview_dist_.at({a, b});
        if (!out[c] || sum < best_sum) {
          out[c] = a;
          best_sum = sum;
        }
      }
    }
    return out;
  }

  const SignalXd& aligned_features(std::size_t i, std::size_t ref) {
    auto it = cache_.find({i, ref});
    if (it != cache_.end()) return it->second;
    const auto& w = windows_[i];
    SignalXd aligned = w.normalized;
    if (i != ref) {
      dsp::DtwOptions dopt;
      dopt.band = opt_.dtw_band;
      const auto path = dsp::dtw(w.normalized, windows_[ref].normalized, dopt);
      bool degenerate = false;
      aligned = normalize_or_zero(
          dsp::resample_spline(dsp::warp_expand(w.normalized, path, true), kFeatureWindow),
          degenerate);
    }
    return cache_.emplace(std::make_pair(i, ref), featurize(aligned, w.duration_s, opt_))
        .first->second;
  }

  const std::vector<PreparedWindow>& windows_;
  const PipelineOptions& opt_;
  int num_classes_;
  std::vector<std::vector<std::size_t>> members_;
  std::map<std::pair<std::size_t, std::size_t>, double> preview_dist_;
  std::map<std::pair<std::size_t, std::size_t>, SignalXd> cache_;
};

}  // namespace

std::vector<PreparedWindow> prepare_windows(const LabeledDataset& ds, const PipelineOptions& opt,
                                            double lsb, StageCounts& counts) {
  ds.validate();
  std::vector<PreparedWindow> out;
  counts.traces = ds.entries.size();
  for (std::size_t t = 0; t < ds.entries.size(); ++t) {
    const auto& entry = ds.entries[t];
    const Waveform w = at_rate(entry.waveform, opt.sample_rate);
    SignalXd x = w.samples;

    if (opt.denoise) {
      int levels = denoise_levels_for(w.sample_rate);
      while (levels > 0 && x.size() < (Index{1} << levels)) --levels;
      if (levels > 0) x = dsp::denoise(x, {opt.wavelet, levels, opt.denoise_mode});
    }

    std::vector<std::pair<Index, Index>> bounds;
    if (opt.segment) {
      Waveform clean = w;
      clean.samples = x;
      if (clean.size() > std::llround(opt.segmenter.window_s * w.sample_rate))
        for (const auto& gw : segment(clean, segmenter_for(opt, x, lsb)))
          bounds.emplace_back(gw.start_index, gw.end_index);
    } else {
      if (!w.meta.gesture_start_s || !w.meta.gesture_end_s)
        throw ValidationError("trace " + std::to_string(t) +
                              " has no ground-truth bounds; segmentation cannot be skipped");
      const Index last = x.size() - 1;
      const Index s = std::clamp<Index>(std::llround(*w.meta.gesture_start_s * w.sample_rate), 0, last);
      const Index e = std::clamp<Index>(std::llround(*w.meta.gesture_end_s * w.sample_rate), 0, last);
      bounds.emplace_back(s, e);
    }

    for (const auto& [s, e] : bounds) {
      ++counts.windows;
      const Index len = e - s + 1;
      if (len < 4) {
        ++counts.too_short;
        continue;
      }
      PreparedWindow pw;
      pw.label = entry.label;
      pw.trace = t;
      pw.duration_s = static_cast<double>(e - s) / w.sample_rate;
      pw.normalized = normalize_or_zero(dsp::resample_spline(x.segment(s, len), kFeatureWindow),
                                        pw.degenerate);
      if (pw.degenerate) ++counts.degenerate;
      pw.preview = dsp::resample_spline(pw.normalized, opt.alignment_preview_len);
      out.push_back(std::move(pw));
    }
  }
  return out;
}

E2eResult run_e2e(const LabeledDataset& ds, const PipelineOptions& opt, double lsb,
                  std::uint64_t seed) {
  E2eResult result;
  const auto windows = prepare_windows(ds, opt, lsb, result.counts);
  if (windows.empty()) throw EmptyResult("no gesture windows survived preprocessing");
  result.counts.classified = windows.size();

  std::vector<int> labels;
  for (const auto& w : windows) labels.push_back(w.label);
  const int num_classes = static_cast<int>(ds.label_names.size());

  if (opt.align) {
    Aligner aligner(windows, num_classes, opt);
    result.report = cross_validate(
        labels, ds.label_names,
        [&](const std::vector<Index>& train, const std::vector<Index>& test) {
          return aligner(train, test);
        },
        opt.folds, seed, opt.knn_k);
  } else {
    LabeledFeatures data;
    data.label_names = ds.label_names;
    data.labels = labels;
    data.rows.resize(static_cast<Index>(windows.size()), feature_width(opt.features));
    for (std::size_t i = 0; i < windows.size(); ++i)
      data.rows.row(static_cast<Index>(i)) =
          featurize(windows[i].normalized, windows[i].duration_s, opt).transpose();
    result.report = cross_validate(data, opt.folds, seed, opt.knn_k);
  }
  return result;
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::Intensity: return "intensity";
    case SweepAxis::Proximity: return "proximity";
    case SweepAxis::HandRadius: return "hand_radius";
    case SweepAxis::SampleRate: return "sample_rate";
  }
  return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) noexcept {
  for (auto a : {SweepAxis::Intensity, SweepAxis::Proximity, SweepAxis::HandRadius,
                 SweepAxis::SampleRate})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw ValidationError("sweep values must be positive");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw ValidationError("sweep values must be sorted ascending");
  }
}

void ExperimentConfig::validate() const {
  generation.validate();
  if (pipeline.folds < 2) throw ValidationError("folds must be at least 2");
  if (pipeline.knn_k < 1) throw ValidationError("knn k must be at least 1");
  if (pipeline.alignment_preview_len < 4) throw ValidationError("alignment preview too short");
  pipeline.segmenter.validate();
  if (sweep) sweep->validate();
}

ExperimentConfig apply_axis(const ExperimentConfig& cfg, SweepAxis axis, double value) {
  ExperimentConfig out = cfg;
  switch (axis) {
    case SweepAxis::Intensity:
      out.generation.environment.illuminance_lux = value;
      break;
    case SweepAxis::Proximity:
      for (auto& t : out.generation.templates) t.proximity_cm = value;
      break;
    case SweepAxis::HandRadius:
      for (auto& t : out.generation.templates) t.hand_radius_cm = value;
      break;
    case SweepAxis::SampleRate:
      out.pipeline.sample_rate = value;
      break;
  }
  out.sweep.reset();
  return out;
}

E2eResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto ds = generate_dataset(cfg.generation);
  return run_e2e(ds, cfg.pipeline, cfg.generation.corruption.lsb(), cfg.generation.seed);
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep) {
  sweep.validate();
  std::vector<SweepPoint> out;
  for (double v : sweep.values) out.push_back({v, run_experiment(apply_axis(cfg, sweep.axis, v))});
  return out;
}

}  // namespace photogest
