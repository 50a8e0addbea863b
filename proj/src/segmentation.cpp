#include "photogest/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "photogest/errors.hpp"

namespace photogest {

void SegmenterConfig::validate() const {
  if (!(window_s > 0.0)) throw ValidationError("segmenter window must be positive");
  if (stride < 1) throw ValidationError("segmenter stride must be >= 1");
  if (!(std_threshold > 0.0) || !(mean_threshold > 0.0))
    throw ValidationError("segmenter thresholds must be positive");
  if (!(min_len_s > 0.0 && min_len_s < max_len_s))
    throw ValidationError("segmenter length bounds must satisfy 0 < min < max");
}

SegmenterConfig SegmenterConfig::scaled(double factor) const {
  SegmenterConfig out = *this;
  out.std_threshold *= factor;
  out.mean_threshold *= factor;
  return out;
}

namespace {

struct WindowStats {
  double mean;
  double std;
};

WindowStats stats(const SignalXd& x, Index begin, Index len) {
  const auto seg = x.segment(begin, len);
  const double mean = seg.mean();
  const double var = (seg.array() - mean).square().sum() / static_cast<double>(len);
  return {mean, std::sqrt(std::max(var, 0.0))};
}

// Indices flagged by the start rule; the first of each consecutive run is kept.
std::vector<Index> start_candidates(const SignalXd& x, Index w, Index stride,
                                    const SegmenterConfig& cfg) {
  std::vector<Index> out;
  Index last_hit = -2 * stride;
  for (Index b = 0; b + w <= x.size(); b += stride) {
    const Index tip = b + w - 1;
    const auto s = stats(x, b, w);
    const bool hit = s.std < cfg.std_threshold && std::abs(x[tip] - s.mean) > cfg.mean_threshold;
    if (hit && tip - last_hit > stride) out.push_back(tip);
    if (hit) last_hit = tip;
  }
  return out;
}

}  // namespace

std::vector<GestureWindow> segment(const Waveform& stream, const SegmenterConfig& cfg,
                                   const std::string& source_id) {
  stream.validate();
  cfg.validate();
  const Index w = std::max<Index>(2, static_cast<Index>(std::llround(cfg.window_s * stream.sample_rate)));
  if (stream.size() <= w) throw ValidationError("stream is not longer than one segmenter window");

  const SignalXd& x = stream.samples;
  const SignalXd reversed = x.reverse();
  const auto starts = start_candidates(x, w, cfg.stride, cfg);
  auto ends_rev = start_candidates(reversed, w, cfg.stride, cfg);
  std::vector<Index> ends;
  for (Index r : ends_rev) ends.push_back(x.size() - 1 - r);
  std::sort(ends.begin(), ends.end());

  std::vector<GestureWindow> out;
  Index floor_index = -1;  // starts must lie after the previous emitted end
  std::size_t si = 0;
  for (Index e : ends) {
    if (e <= floor_index) continue;
    // latest start strictly before e and after floor_index
    std::optional<Index> start;
    while (si < starts.size() && starts[si] < e) {
      if (starts[si] > floor_index) start = starts[si];
      ++si;
    }
    if (!start) continue;
    floor_index = e;
    const double dur = static_cast<double>(e - *start) / stream.sample_rate;
    if (dur < cfg.min_len_s || dur > cfg.max_len_s) continue;
    GestureWindow gw;
    gw.start_index = *start;
    gw.end_index = e;
    gw.samples = x.segment(*start, e - *start + 1);
    gw.sample_rate = stream.sample_rate;
    gw.source_id = source_id;
    out.push_back(std::move(gw));
  }
  return out;
}

double robust_scale(const SignalXd& x) {
  if (x.size() == 0) return 0.0;
  std::vector<double> v(x.data(), x.data() + x.size());
  auto median = [](std::vector<double>& a) {
    const std::size_t n = a.size();
    std::nth_element(a.begin(), a.begin() + n / 2, a.end());
    double m = a[n / 2];
    if (n % 2 == 0) m = 0.5 * (m + *std::max_element(a.begin(), a.begin() + n / 2));
    return m;
  };
  const double med = median(v);
  for (auto& e : v) e = std::abs(e - med);
  return median(v) / 0.6745;
}

}  // namespace photogest
