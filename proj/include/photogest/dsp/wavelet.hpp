#pragma once

// Orthogonal discrete wavelet transform with periodized boundaries.
//
// One analysis step maps a length-N signal (N even) to N/2 approximation and
// N/2 detail coefficients:
//   a[k] = sum_n h[n] x[(2k + n) mod N]
//   d[k] = sum_n g[n] x[(2k + n) mod N],   g[n] = (-1)^n h[L - 1 - n]
// Synthesis is the transpose of analysis, which for orthogonal filters is the
// exact inverse.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photogest/errors.hpp"
#include "photogest/signal.hpp"

namespace photogest::dsp {

/// haar and db1 share one filter.
enum class WaveletKind { Haar, Db1, Db2, Db4, Coif2 };

inline std::string_view to_string(WaveletKind kind) noexcept {
  switch (kind) {
    case WaveletKind::Haar: return "haar";
    case WaveletKind::Db1: return "db1";
    case WaveletKind::Db2: return "db2";
    case WaveletKind::Db4: return "db4";
    case WaveletKind::Coif2: return "coif2";
  }
  return "?";
}

inline std::optional<WaveletKind> parse_wavelet(std::string_view name) noexcept {
  for (auto k : {WaveletKind::Haar, WaveletKind::Db1, WaveletKind::Db2, WaveletKind::Db4,
                 WaveletKind::Coif2})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

inline const std::vector<WaveletKind>& all_wavelets() {
  static const std::vector<WaveletKind> kinds{WaveletKind::Haar, WaveletKind::Db1,
                                              WaveletKind::Db2, WaveletKind::Db4,
                                              WaveletKind::Coif2};
  return kinds;
}

/// Scaling (low-pass synthesis) filter h.
inline std::span<const double> scaling_filter(WaveletKind kind) noexcept {
  static constexpr double haar[] = {7.07106781186547572737e-01, 7.07106781186547572737e-01};
  static constexpr double db2[] = {4.82962913144534156107e-01, 8.36516303737807942476e-01,
                                   2.24143868042013388875e-01, -1.29409522551260369738e-01};
  static constexpr double db4[] = {
      2.30377813308896506328e-01,  7.14846570552915672181e-01,  6.30880767929858921050e-01,
      -2.79837694168598542788e-02, -1.87034811719093085891e-01, 3.08413818355607639854e-02,
      3.28830116668851965556e-02,  -1.05974017850690317016e-02};
  static constexpr double coif2[] = {
      1.63873364632036409849e-02,  -4.14649367868717769192e-02, -6.73725547237255945054e-02,
      3.86110066822762887373e-01,  8.12723635449413506215e-01,  4.17005184423239083635e-01,
      -7.64885990782807612121e-02, -5.94344186464310919593e-02, 2.36801719468477701869e-02,
      5.61143481936883428002e-03,  -1.82320887091103230049e-03, -7.20549445520346975788e-04};
  switch (kind) {
    case WaveletKind::Haar:
    case WaveletKind::Db1: return haar;
    case WaveletKind::Db2: return db2;
    case WaveletKind::Db4: return db4;
    case WaveletKind::Coif2: return coif2;
  }
  return {};
}

/// Quadrature-mirror high-pass filter g[n] = (-1)^n h[L-1-n].
inline std::vector<double> wavelet_filter(WaveletKind kind) {
  const auto h = scaling_filter(kind);
  const std::size_t L = h.size();
  std::vector<double> g(L);
  for (std::size_t n = 0; n < L; ++n) g[n] = (n % 2 == 0 ? 1.0 : -1.0) * h[L - 1 - n];
  return g;
}

template <typename Scalar>
struct DwtCoefficients {
  Signal<Scalar> approximation;
  std::vector<Signal<Scalar>> details;  ///< details[j] holds level j + 1
  Index original_length = 0;
  WaveletKind wavelet = WaveletKind::Db2;

  int levels() const noexcept { return static_cast<int>(details.size()); }
  const Signal<Scalar>& detail(int level) const { return details.at(level - 1); }
  Signal<Scalar>& detail(int level) { return details.at(level - 1); }

  Scalar energy() const {
    Scalar e = approximation.squaredNorm();
    for (const auto& d : details) e += d.squaredNorm();
    return e;
  }
};

namespace detail {

template <typename Scalar>
void analysis_step(const Signal<Scalar>& x, std::span<const double> h, const std::vector<double>& g,
                   Signal<Scalar>& approx, Signal<Scalar>& det) {
  const Index N = x.size();
  const Index half = N / 2;
  approx.setZero(half);
  det.setZero(half);
  for (Index k = 0; k < half; ++k) {
    Scalar a(0), d(0);
    for (std::size_t n = 0; n < h.size(); ++n) {
      const Scalar v = x[(2 * k + static_cast<Index>(n)) % N];
      a += static_cast<Scalar>(h[n]) * v;
      d += static_cast<Scalar>(g[n]) * v;
    }
    approx[k] = a;
    det[k] = d;
  }
}

template <typename Scalar>
Signal<Scalar> synthesis_step(const Signal<Scalar>& approx, const Signal<Scalar>& det,
                              std::span<const double> h, const std::vector<double>& g) {
  const Index half = approx.size();
  const Index N = 2 * half;
  Signal<Scalar> x = Signal<Scalar>::Zero(N);
  for (Index k = 0; k < half; ++k)
    for (std::size_t n = 0; n < h.size(); ++n)
      x[(2 * k + static_cast<Index>(n)) % N] +=
          static_cast<Scalar>(h[n]) * approx[k] + static_cast<Scalar>(g[n]) * det[k];
  return x;
}

}  // namespace detail

/// Multi-level periodized decomposition. Length must be divisible by 2^levels.
template <typename Derived>
DwtCoefficients<typename Derived::Scalar> dwt_forward(const Eigen::MatrixBase<Derived>& signal,
                                                      WaveletKind wavelet, int levels) {
  using Scalar = typename Derived::Scalar;
  if (levels < 1) throw ValidationError("DWT needs at least one level");
  const Index n = signal.size();
  const Index block = Index{1} << levels;
  if (n == 0 || n % block != 0)
    throw ValidationError("DWT input length " + std::to_string(n) + " must be a positive multiple of 2^" +
                          std::to_string(levels) + " = " + std::to_string(block));

  const auto h = scaling_filter(wavelet);
  const auto g = wavelet_filter(wavelet);
  DwtCoefficients<Scalar> out;
  out.original_length = n;
  out.wavelet = wavelet;
  out.details.resize(static_cast<std::size_t>(levels));

  Signal<Scalar> current = signal;
  for (int level = 0; level < levels; ++level) {
    Signal<Scalar> approx;
    detail::analysis_step(current, h, g, approx, out.details[static_cast<std::size_t>(level)]);
    current = std::move(approx);
  }
  out.approximation = std::move(current);
  return out;
}

template <typename Scalar>
Signal<Scalar> dwt_inverse(const DwtCoefficients<Scalar>& coeffs) {
  const int levels = coeffs.levels();
  if (levels < 1) throw ValidationError("DWT coefficients have no detail levels");
  if (coeffs.original_length != coeffs.approximation.size() * (Index{1} << levels))
    throw ValidationError("approximation length inconsistent with original length");
  for (int level = 1; level <= levels; ++level)
    if (coeffs.detail(level).size() != (coeffs.original_length >> level))
      throw ValidationError("detail level " + std::to_string(level) + " has wrong length");

  const auto h = scaling_filter(coeffs.wavelet);
  const auto g = wavelet_filter(coeffs.wavelet);
  Signal<Scalar> current = coeffs.approximation;
  for (int level = levels; level >= 1; --level)
    current = detail::synthesis_step(current, coeffs.detail(level), h, g);
  return current;
}

}  // namespace photogest::dsp
