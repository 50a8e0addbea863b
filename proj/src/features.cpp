#include "photogest/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "photogest/errors.hpp"

namespace photogest {

std::string_view to_string(FeatureSchema schema) noexcept {
  return schema == FeatureSchema::Stat22 ? "stat22" : "dwt16";
}

std::optional<FeatureSchema> parse_feature_schema(std::string_view name) noexcept {
  if (name == "stat22") return FeatureSchema::Stat22;
  if (name == "dwt16") return FeatureSchema::Dwt16;
  return std::nullopt;
}

const std::array<std::string_view, kStatFeatureCount>& stat22_names() {
  static constexpr std::array<std::string_view, kStatFeatureCount> names{
      "mean",          "std",           "variance",          "min",
      "max",           "range",         "q1",                "q2",
      "q3",            "iqr",           "skewness",          "kurtosis",
      "rms",           "mad",           "mean_crossing_rate", "energy",
      "mean_abs_diff", "peak_count",    "dominant_freq_hz",  "spectral_centroid",
      "spectral_spread", "spectral_entropy"};
  return names;
}

Index feature_width(FeatureSchema schema) noexcept {
  return schema == FeatureSchema::Stat22 ? kStatFeatureCount : kDwtFeatureCount;
}

namespace {

void check_window(const SignalXd& window) {
  if (window.size() != kFeatureWindow)
    throw ValidationError("feature window must have exactly 512 samples, got " +
                          std::to_string(window.size()));
  if (!window.allFinite()) throw ValidationError("feature window contains non-finite values");
}

// Linear-interpolated quantile on sorted data (type 7).
double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

FeatureVector statistical_features(const SignalXd& x, double sample_rate) {
  check_window(x);
  if (!(sample_rate > 0.0)) throw ValidationError("sample rate must be positive");
  const auto n = static_cast<double>(x.size());

  const double mean = x.mean();
  const Eigen::ArrayXd centered = x.array() - mean;
  const double var = centered.square().sum() / n;
  const double sd = std::sqrt(var);
  const double lo = x.minCoeff(), hi = x.maxCoeff();

  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end());
  const double q1 = quantile(sorted, 0.25), q2 = quantile(sorted, 0.5), q3 = quantile(sorted, 0.75);

  // Moments are zero by convention when the spread vanishes relative to the level.
  const bool flat = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
  const double skew = flat ? 0.0 : centered.cube().sum() / n / (var * sd);
  const double kurt = flat ? 0.0 : centered.square().square().sum() / n / (var * var) - 3.0;

  const double rms = std::sqrt(x.squaredNorm() / n);
  const double mad = centered.abs().sum() / n;

  Index crossings = 0;
  for (Index i = 1; i < x.size(); ++i)
    if ((centered[i - 1] < 0.0) != (centered[i] < 0.0)) ++crossings;
  const double crossing_rate = static_cast<double>(crossings) / (n - 1.0);

  const double energy = x.squaredNorm();
  const double mean_abs_diff = (x.tail(x.size() - 1) - x.head(x.size() - 1)).cwiseAbs().mean();

  Index peaks = 0;
  if (!flat)
    for (Index i = 1; i + 1 < x.size(); ++i)
      if (x[i] > x[i - 1] && x[i] >= x[i + 1] && x[i] > mean + sd) ++peaks;

  // Magnitude spectrum of the mean-removed window, bins 1..n/2.
  Eigen::FFT<double> fft;
  std::vector<double> time(centered.data(), centered.data() + centered.size());
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, time);
  const std::size_t bins = static_cast<std::size_t>(x.size()) / 2;
  const double df = sample_rate / n;
  double mag_sum = 0.0, centroid = 0.0, best_mag = 0.0;
  std::size_t best_bin = 0;
  std::vector<double> mag(bins + 1, 0.0);
  for (std::size_t k = 1; k <= bins; ++k) {
    mag[k] = std::abs(freq[k]);
    mag_sum += mag[k];
    centroid += mag[k] * static_cast<double>(k) * df;
    if (mag[k] > best_mag) {
      best_mag = mag[k];
      best_bin = k;
    }
  }
  double dominant = 0.0, spread = 0.0, entropy = 0.0;
  if (!flat && mag_sum > 0.0) {
    dominant = static_cast<double>(best_bin) * df;
    centroid /= mag_sum;
    for (std::size_t k = 1; k <= bins; ++k) {
      const double p = mag[k] / mag_sum;
      const double f = static_cast<double>(k) * df;
      spread += p * (f - centroid) * (f - centroid);
      if (p > 0.0) entropy -= p * std::log(p);
    }
    spread = std::sqrt(spread);
    entropy /= std::log(static_cast<double>(bins));
  } else {
    centroid = 0.0;
  }

  FeatureVector fv;
  fv.schema = FeatureSchema::Stat22;
  fv.values.resize(kStatFeatureCount);
  fv.values << mean, sd, var, lo, hi, hi - lo, q1, q2, q3, q3 - q1, skew, kurt, rms, mad,
      crossing_rate, energy, mean_abs_diff, static_cast<double>(peaks), dominant, centroid,
      spread, entropy;
  return fv;
}

FeatureVector wavelet_features(const SignalXd& window, dsp::WaveletKind wavelet) {
  check_window(window);
  const auto coeffs = dsp::dwt_forward(window, wavelet, 5);
  FeatureVector fv;
  fv.schema = FeatureSchema::Dwt16;
  fv.values = coeffs.detail(5);
  return fv;
}

}  // namespace photogest
