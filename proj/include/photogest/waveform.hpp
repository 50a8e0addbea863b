#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "photogest/gesture.hpp"
#include "photogest/photovoltaic.hpp"
#include "photogest/signal.hpp"

namespace photogest {

/// Where a waveform came from. Ground-truth gesture bounds are only known for
/// synthetic traces.
struct WaveformMeta {
  std::string cell_label;
  std::optional<GestureKind> gesture;
  std::optional<std::uint64_t> seed;
  std::optional<double> gesture_start_s;
  std::optional<double> gesture_end_s;
};

/// Uniformly sampled photocurrent in mA.
struct Waveform {
  SignalXd samples;
  double sample_rate = 500.0;
  double t0 = 0.0;
  WaveformMeta meta;

  Index size() const noexcept { return samples.size(); }
  double time_at(Index i) const noexcept { return t0 + static_cast<double>(i) / sample_rate; }
  double duration() const noexcept { return static_cast<double>(size() - 1) / sample_rate; }
  void validate() const;
};

struct PauseConfig {
  double before_s = 0.5;
  double after_s = 0.5;
};

/// Clean gesture trace: plateau, gesture, plateau, sampled at `sample_rate`.
/// Length is round(total_duration * rate) + 1.
Waveform synthesize(const GestureSpec& gesture, const SolarCellSpec& cell,
                    const LightEnvironment& env, double sample_rate, PauseConfig pauses = {});

/// Piecewise-constant global light multiplier cycling through `levels`.
struct IntensityPattern {
  std::vector<double> levels;
  double switch_hz = 2.0;

  double multiplier_at(double t) const;
};

/// Sensor and acquisition impairments, applied in this order: intensity
/// pattern, mains ripple, analog gain, Gaussian noise, ADC quantization.
struct CorruptionModel {
  double gaussian_sigma = 0.0;  ///< mA, referred to the ADC input
  double mains_hz = 50.0;
  double mains_amplitude = 0.0;  ///< mA, before gain
  double gain = 1.0;             ///< pre-ADC amplification
  std::optional<int> adc_bits;
  double adc_full_scale = 28.274333882308138;  ///< mA
  std::optional<IntensityPattern> intensity_pattern;
  std::uint64_t seed = 0;

  double lsb() const;
  bool is_identity() const;
  void validate() const;
};

Waveform corrupt(const Waveform& w, const CorruptionModel& model);

/// Keeps every `factor`-th sample.
Waveform decimate(const Waveform& w, int factor);

}  // namespace photogest
