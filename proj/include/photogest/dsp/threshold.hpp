#pragma once

// Soft thresholding and the SURE threshold rule for wavelet shrinkage.

#include <algorithm>
#include <cmath>
#include <vector>

#include "photogest/errors.hpp"
#include "photogest/signal.hpp"

namespace photogest::dsp {

/// sign(x) * max(|x| - t, 0), elementwise.
template <typename Derived>
Signal<typename Derived::Scalar> soft_threshold(const Eigen::MatrixBase<Derived>& coeffs,
                                                typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  if (!(t >= Scalar(0))) throw ValidationError("threshold must be non-negative");
  return coeffs.unaryExpr([t](Scalar x) {
    const Scalar m = std::abs(x) - t;
    return m > Scalar(0) ? (x < Scalar(0) ? -m : m) : Scalar(0);
  });
}

/// median(|c|) / 0.6745, the usual Gaussian noise-scale estimate for a detail band.
template <typename Derived>
typename Derived::Scalar mad_sigma(const Eigen::MatrixBase<Derived>& coeffs) {
  using Scalar = typename Derived::Scalar;
  if (coeffs.size() == 0) return Scalar(0);
  std::vector<Scalar> a(static_cast<std::size_t>(coeffs.size()));
  for (Index i = 0; i < coeffs.size(); ++i) a[static_cast<std::size_t>(i)] = std::abs(coeffs[i]);
  const std::size_t n = a.size();
  std::nth_element(a.begin(), a.begin() + n / 2, a.end());
  Scalar med = a[n / 2];
  if (n % 2 == 0) {
    const Scalar lower = *std::max_element(a.begin(), a.begin() + n / 2);
    med = (med + lower) / Scalar(2);
  }
  return med / Scalar(0.6745);
}

/// SURE risk of soft thresholding unit-variance data `y` at threshold t:
///   n - 2 #{|y_i| <= t} + sum min(y_i^2, t^2)
template <typename Derived>
typename Derived::Scalar sure_risk(const Eigen::MatrixBase<Derived>& y, typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  Scalar risk = static_cast<Scalar>(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    const Scalar a = std::abs(y[i]);
    if (a <= t) risk -= Scalar(2);
    risk += std::min(a * a, t * t);
  }
  return risk;
}

/// SURE threshold for `coeffs` given a known noise scale `sigma`.
///
/// The data are divided by sigma, the risk is minimised over the candidate set
/// {0} U {|y_i|} (ties resolve to the smaller threshold) and the winner is
/// returned in the original units. sigma == 0 yields 0.
template <typename Derived>
typename Derived::Scalar sure_threshold(const Eigen::MatrixBase<Derived>& coeffs,
                                        typename Derived::Scalar sigma) {
  using Scalar = typename Derived::Scalar;
  if (coeffs.size() == 0) throw ValidationError("SURE needs a non-empty coefficient vector");
  if (!(sigma > Scalar(0))) return Scalar(0);

  const auto n = static_cast<std::size_t>(coeffs.size());
  std::vector<Scalar> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(coeffs[static_cast<Index>(i)]) / sigma;
  std::sort(a.begin(), a.end());

  // candidate t = 0
  const auto zeros = static_cast<Scalar>(std::count(a.begin(), a.end(), Scalar(0)));
  Scalar best_risk = static_cast<Scalar>(n) - Scalar(2) * zeros;
  Scalar best_t(0);

  Scalar below_sq(0);  // sum of a_j^2 for a_j <= t
  std::size_t i = 0;
  while (i < n) {
    const Scalar t = a[i];
    std::size_t j = i;
    while (j < n && a[j] == t) {
      below_sq += a[j] * a[j];
      ++j;
    }
    const auto count = static_cast<Scalar>(j);
    const Scalar risk = static_cast<Scalar>(n) - Scalar(2) * count + below_sq +
                        static_cast<Scalar>(n - j) * t * t;
    if (risk < best_risk) {
      best_risk = risk;
      best_t = t;
    }
    i = j;
  }
  return best_t * sigma;
}

/// SURE threshold with the noise scale estimated from the vector itself.
template <typename Derived>
typename Derived::Scalar sure_threshold(const Eigen::MatrixBase<Derived>& coeffs) {
  if (coeffs.size() == 0) throw ValidationError("SURE needs a non-empty coefficient vector");
  return sure_threshold(coeffs, mad_sigma(coeffs));
}

}  // namespace photogest::dsp
