#pragma once

// Plateau-bounded gesture segmentation.
//
// A start is flagged at the last sample of a sliding window when the window is
// flat (std < stdThr) and that sample has left the window mean by more than
// meanThr. Ends use the same rule on the time-reversed stream: the window that
// follows the end sample is flat and the end sample differs from its mean.
// Each end is paired with the latest start after the previous window; pairs
// outside [min_len, max_len] are dropped.

#include <string>
#include <vector>

#include "photogest/waveform.hpp"

namespace photogest {

struct SegmenterConfig {
  double window_s = 0.1;
  Index stride = 1;
  double std_threshold = 0.25;
  double mean_threshold = 0.5;
  double min_len_s = 0.2;
  double max_len_s = 1.4;

  void validate() const;
  /// Thresholds multiplied by `factor` (e.g. ADC LSB in mA, or a robust scale).
  SegmenterConfig scaled(double factor) const;
};

struct GestureWindow {
  Index start_index = 0;
  Index end_index = 0;  ///< inclusive
  SignalXd samples;
  double sample_rate = 0.0;
  std::string source_id;

  double start_s() const { return static_cast<double>(start_index) / sample_rate; }
  double end_s() const { return static_cast<double>(end_index) / sample_rate; }
  double duration_s() const { return static_cast<double>(end_index - start_index) / sample_rate; }
};

std::vector<GestureWindow> segment(const Waveform& stream, const SegmenterConfig& cfg,
                                   const std::string& source_id = {});

/// MAD of the stream around its median divided by 0.6745.
double robust_scale(const SignalXd& x);

}  // namespace photogest
