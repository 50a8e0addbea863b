#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photogest/waveform.hpp"

namespace photogest {

/// Relative half-widths of the uniform draws around each template value.
struct Jitter {
  double speed = 0.25;
  double proximity = 0.33;
};

struct GenerationConfig {
  std::vector<GestureSpec> templates;
  SolarCellSpec cell;
  LightEnvironment environment;
  int n_per_gesture = 100;
  Jitter jitter;
  CorruptionModel corruption;
  double sample_rate = 500.0;
  PauseConfig pauses;
  std::uint64_t seed = 1;

  void validate() const;
};

struct DatasetEntry {
  Waveform waveform;
  int label = 0;
};

/// Waveforms with integer labels into `label_names` (sorted lexicographically).
struct LabeledDataset {
  std::vector<DatasetEntry> entries;
  std::vector<std::string> label_names;

  void validate() const;
};

/// The five-gesture study: R_H 6 cm, R_S 2 cm, D 12 cm, P 3 cm, 7 mA/cm^2,
/// 20 cm/s, 5000 lux, 100 samples per gesture, 10-bit ADC with 1 LSB noise.
GenerationConfig default_study();

/// Draws speed and proximity per sample, synthesizes, corrupts and labels.
/// Sample `i` uses a generator derived from (seed, i) only.
LabeledDataset generate_dataset(const GenerationConfig& cfg);

}  // namespace photogest
