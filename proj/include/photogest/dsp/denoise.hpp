#pragma once

#include "photogest/dsp/threshold.hpp"
#include "photogest/dsp/wavelet.hpp"

namespace photogest::dsp {

enum class DenoiseMode {
  Level5Only,  ///< shrink only the deepest detail band
  AllLevels,   ///< shrink every detail band
};

struct DenoiseOptions {
  WaveletKind wavelet = WaveletKind::Db2;
  int levels = 5;
  DenoiseMode mode = DenoiseMode::Level5Only;
};

/// Symmetric extension [x, reverse(x)] padded with x[0] up to a multiple of
/// 2^levels. The result is continuous under periodic wrap.
template <typename Derived>
Signal<typename Derived::Scalar> symmetric_extend(const Eigen::MatrixBase<Derived>& x, int levels) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.size();
  const Index block = Index{1} << levels;
  const Index m = ((2 * n + block - 1) / block) * block;
  Signal<Scalar> y(m);
  y.head(n) = x;
  y.segment(n, n) = x.reverse();
  y.tail(m - 2 * n).setConstant(x[0]);
  return y;
}

/// Wavelet shrinkage: decompose, soft-threshold the selected detail bands with
/// a SURE threshold, reconstruct, crop to the input length.
///
/// The noise scale is estimated once from the level-1 details, so noise-free
/// inputs come back unchanged.
template <typename Derived>
Signal<typename Derived::Scalar> denoise(const Eigen::MatrixBase<Derived>& x,
                                         const DenoiseOptions& opt = {}) {
  using Scalar = typename Derived::Scalar;
  if (opt.levels < 1) throw ValidationError("denoise needs at least one level");
  if (x.size() < (Index{1} << opt.levels))
    throw ValidationError("signal shorter than 2^levels cannot be denoised at this depth");

  const Signal<Scalar> extended = symmetric_extend(x, opt.levels);
  auto coeffs = dwt_forward(extended, opt.wavelet, opt.levels);
  const Scalar sigma = mad_sigma(coeffs.detail(1));

  const int first = opt.mode == DenoiseMode::Level5Only ? opt.levels : 1;
  for (int level = first; level <= opt.levels; ++level) {
    auto& band = coeffs.detail(level);
    band = soft_threshold(band, sure_threshold(band, sigma));
  }
  return dwt_inverse(coeffs).head(x.size());
}

}  // namespace photogest::dsp
