#include "photogest/dataset.hpp"

#include <algorithm>

#include "photogest/errors.hpp"
#include "photogest/rng.hpp"

namespace photogest {

void GenerationConfig::validate() const {
  if (templates.empty()) throw ValidationError("dataset needs at least one gesture template");
  if (n_per_gesture < 1) throw ValidationError("n_per_gesture must be at least 1");
  if (!(jitter.speed >= 0.0 && jitter.speed < 1.0) ||
      !(jitter.proximity >= 0.0 && jitter.proximity < 1.0))
    throw ValidationError("jitter fractions must lie in [0, 1)");
  for (const auto& t : templates) t.validate();
  cell.validate();
  environment.validate();
  corruption.validate();
  if (!(sample_rate > 0.0)) throw ValidationError("sample rate must be positive");
}

void LabeledDataset::validate() const {
  if (entries.empty()) throw ValidationError("dataset is empty");
  for (const auto& e : entries)
    if (e.label < 0 || e.label >= static_cast<int>(label_names.size()))
      throw ValidationError("dataset label outside the label set");
}

GenerationConfig default_study() {
  GenerationConfig cfg;
  for (GestureKind k : all_gesture_kinds()) {
    GestureSpec g;
    g.kind = k;
    cfg.templates.push_back(g);
  }
  cfg.cell = SolarCellSpec::circular("T", 2.0, 7.0);
  cfg.corruption.adc_bits = 10;
  // full scale: no-hand output of a 27 mA/cm^2 cell of the same size at 5000 lux
  const double bright_jsc = scale_current_density(27.0, LightEnvironment{5000.0, 1200.0});
  cfg.corruption.adc_full_scale = baseline_photocurrent(cfg.cell, bright_jsc);
  cfg.corruption.gaussian_sigma = cfg.corruption.lsb();
  return cfg;
}

LabeledDataset generate_dataset(const GenerationConfig& cfg) {
  cfg.validate();
  LabeledDataset ds;
  for (const auto& t : cfg.templates) {
    std::string name(to_string(t.kind));
    if (std::find(ds.label_names.begin(), ds.label_names.end(), name) == ds.label_names.end())
      ds.label_names.push_back(name);
  }
  std::sort(ds.label_names.begin(), ds.label_names.end());

  const Rng root(cfg.seed);
  std::uint64_t index = 0;
  for (const auto& tmpl : cfg.templates) {
    const auto label = static_cast<int>(
        std::find(ds.label_names.begin(), ds.label_names.end(), to_string(tmpl.kind)) -
        ds.label_names.begin());
    for (int i = 0; i < cfg.n_per_gesture; ++i, ++index) {
      Rng rng = root.split(index);
      GestureSpec g = tmpl;
      g.speed_cm_s = tmpl.speed_cm_s * rng.uniform(1.0 - cfg.jitter.speed, 1.0 + cfg.jitter.speed);
      g.proximity_cm =
          tmpl.proximity_cm * rng.uniform(1.0 - cfg.jitter.proximity, 1.0 + cfg.jitter.proximity);
      CorruptionModel noise = cfg.corruption;
      noise.seed = derive_seed(cfg.corruption.seed, rng.next());

      Waveform w = synthesize(g, cfg.cell, cfg.environment, cfg.sample_rate, cfg.pauses);
      w = corrupt(w, noise);
      w.meta.seed = noise.seed;
      ds.entries.push_back({std::move(w), label});
    }
  }
  return ds;
}

}  // namespace photogest
