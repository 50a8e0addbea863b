#include "photogest/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "photogest/errors.hpp"
#include "photogest/rng.hpp"

namespace photogest {

void Waveform::validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw ValidationError("sample rate must be positive");
  if (samples.size() < 1) throw ValidationError("waveform must not be empty");
  if (!samples.allFinite()) throw ValidationError("waveform samples must be finite");
}

Waveform synthesize(const GestureSpec& gesture, const SolarCellSpec& cell,
                    const LightEnvironment& env, double sample_rate, PauseConfig pauses) {
  gesture.validate();
  cell.validate();
  env.validate();
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw ValidationError("sample rate must be positive");
  if (!(pauses.before_s >= 0.0 && pauses.after_s >= 0.0))
    throw ValidationError("pauses must be non-negative");

  const double jsc = scale_current_density(cell.standard_current_density, env);
  const double T = gesture.duration();
  const double total = pauses.before_s + T + pauses.after_s;
  const auto n = static_cast<Index>(std::llround(total * sample_rate)) + 1;
  if (n < 2) throw ValidationError("waveform would have fewer than 2 samples");

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double tau = std::clamp(t - pauses.before_s, 0.0, T);
    const HandPose pose = pose_at(gesture, tau);
    w.samples[i] = gesture.kind == GestureKind::LeftRight ? photocurrent_raytrace(pose, cell, jsc)
                                                          : photocurrent_at(pose, cell, jsc);
  }
  w.meta.cell_label = cell.label;
  w.meta.gesture = gesture.kind;
  w.meta.gesture_start_s = pauses.before_s;
  w.meta.gesture_end_s = pauses.before_s + T;
  return w;
}

double IntensityPattern::multiplier_at(double t) const {
  if (levels.empty()) return 1.0;
  const auto slot = static_cast<long long>(std::floor(t * switch_hz));
  const auto n = static_cast<long long>(levels.size());
  return levels[static_cast<std::size_t>(((slot % n) + n) % n)];
}

double CorruptionModel::lsb() const {
  return adc_bits ? adc_full_scale / std::ldexp(1.0, *adc_bits) : 0.0;
}

bool CorruptionModel::is_identity() const {
  return gaussian_sigma == 0.0 && mains_amplitude == 0.0 && gain == 1.0 && !adc_bits &&
         !intensity_pattern;
}

void CorruptionModel::validate() const {
  if (!(gaussian_sigma >= 0.0)) throw ValidationError("noise sigma must be non-negative");
  if (!(mains_amplitude >= 0.0)) throw ValidationError("mains amplitude must be non-negative");
  if (!(gain > 0.0)) throw ValidationError("gain must be positive");
  if (adc_bits && (*adc_bits < 4 || *adc_bits > 24))
    throw ValidationError("ADC bits must lie in [4, 24]");
  if (!(adc_full_scale > 0.0)) throw ValidationError("ADC full scale must be positive");
  if (intensity_pattern) {
    if (intensity_pattern->levels.empty())
      throw ValidationError("intensity pattern needs at least one level");
    for (double m : intensity_pattern->levels)
      if (!(m > 0.0)) throw ValidationError("intensity multipliers must be positive");
    if (!(intensity_pattern->switch_hz > 0.0))
      throw ValidationError("intensity switch rate must be positive");
  }
}

Waveform corrupt(const Waveform& w, const CorruptionModel& model) {
  w.validate();
  model.validate();
  Waveform out = w;
  if (model.is_identity()) return out;

  Rng rng(model.seed);
  const double lsb = model.lsb();
  for (Index i = 0; i < out.size(); ++i) {
    const double t = w.time_at(i);
    double v = out.samples[i];
    if (model.intensity_pattern) v *= model.intensity_pattern->multiplier_at(t);
    if (model.mains_amplitude > 0.0)
      v += model.mains_amplitude * std::sin(2.0 * std::numbers::pi * model.mains_hz * t);
    v *= model.gain;
    if (model.gaussian_sigma > 0.0) v += model.gaussian_sigma * rng.normal();
    if (model.adc_bits) v = std::clamp(std::floor(v / lsb) * lsb, 0.0, model.adc_full_scale);
    out.samples[i] = v;
  }
  out.meta.seed = model.seed;
  return out;
}

Waveform decimate(const Waveform& w, int factor) {
  if (factor < 1) throw ValidationError("decimation factor must be >= 1");
  Waveform out = w;
  const Index n = (w.size() + factor - 1) / factor;
  out.samples.resize(n);
  for (Index i = 0; i < n; ++i) out.samples[i] = w.samples[i * factor];
  out.sample_rate = w.sample_rate / factor;
  return out;
}

}  // namespace photogest
