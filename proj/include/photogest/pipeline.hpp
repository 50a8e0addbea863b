#pragma once

// End-to-end recognition: denoise -> segment (or ground-truth bounds) ->
// resample to 512 -> zscore -> DTW alignment -> features -> KNN cross-validation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "photogest/classifier.hpp"
#include "photogest/dataset.hpp"
#include "photogest/dsp/denoise.hpp"
#include "photogest/features.hpp"
#include "photogest/segmentation.hpp"

namespace photogest {

enum class ThresholdUnits {
  Raw,   ///< thresholds used as given, in mA
  Lsb,   ///< thresholds are in ADC counts (multiplied by the ADC LSB)
  Auto,  ///< thresholds multiplied by the stream's robust scale
};

struct PipelineOptions {
  bool denoise = true;
  dsp::DenoiseMode denoise_mode = dsp::DenoiseMode::AllLevels;
  dsp::WaveletKind wavelet = dsp::WaveletKind::Db2;
  bool segment = true;
  // calibrated in ADC counts on the default study after all-levels denoising
  SegmenterConfig segmenter{0.1, 1, 1.0, 2.0, 0.2, 1.4};
  ThresholdUnits threshold_units = ThresholdUnits::Lsb;
  bool align = true;
  Index alignment_preview_len = 64;  ///< resolution used to pick references
  std::optional<Index> dtw_band;
  FeatureSchema features = FeatureSchema::Dwt16;
  int knn_k = 10;
  int folds = 10;
  std::optional<double> sample_rate;  ///< decimate traces to this rate first
};

/// Denoising depth whose deepest approximation band stays at or above
/// 250 / 2^5 Hz: 5 at 500 Hz, 1 at 50 Hz, 0 (skip) below ~31 Hz.
int denoise_levels_for(double sample_rate);

/// A 512-sample normalized gesture ready for alignment.
struct PreparedWindow {
  SignalXd normalized;  ///< z-scored, or zeros when the window was constant
  SignalXd preview;     ///< normalized resampled to alignment_preview_len
  double duration_s = 0.0;
  int label = 0;
  std::size_t trace = 0;
  bool degenerate = false;
};

struct StageCounts {
  std::size_t traces = 0;
  std::size_t windows = 0;
  std::size_t too_short = 0;
  std::size_t degenerate = 0;
  std::size_t classified = 0;
};

/// Runs every stage up to normalization. `lsb` is the ADC step of the traces
/// (0 when unknown).
std::vector<PreparedWindow> prepare_windows(const LabeledDataset& ds, const PipelineOptions& opt,
                                            double lsb, StageCounts& counts);

struct E2eResult {
  EvalReport report;
  StageCounts counts;
};

/// Thrown when no window survives preprocessing.
struct EmptyResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

E2eResult run_e2e(const LabeledDataset& ds, const PipelineOptions& opt, double lsb,
                  std::uint64_t seed);

enum class SweepAxis { Intensity, Proximity, HandRadius, SampleRate };

std::string_view to_string(SweepAxis axis) noexcept;
std::optional<SweepAxis> parse_sweep_axis(std::string_view name) noexcept;

struct SweepSpec {
  SweepAxis axis = SweepAxis::Intensity;
  std::vector<double> values;

  void validate() const;
};

struct ExperimentConfig {
  std::string scenario = "default";
  GenerationConfig generation = default_study();
  PipelineOptions pipeline;
  std::optional<SweepSpec> sweep;

  void validate() const;
};

/// Generation config with one axis value applied. Sample-rate points keep the
/// generation rate and set pipeline decimation instead.
ExperimentConfig apply_axis(const ExperimentConfig& cfg, SweepAxis axis, double value);

E2eResult run_experiment(const ExperimentConfig& cfg);

struct SweepPoint {
  double value = 0.0;
  E2eResult result;
};

/// One e2e run per axis value, all with the config's seed.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep);

}  // namespace photogest
