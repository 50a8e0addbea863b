#pragma once

#include <vector>

#include "photogest/errors.hpp"
#include "photogest/signal.hpp"

namespace photogest::dsp {

/// Natural cubic spline through (i, y_i), evaluated at `target_len` evenly
/// spaced positions over [0, n-1]. End samples are reproduced exactly.
template <typename Derived>
Signal<typename Derived::Scalar> resample_spline(const Eigen::MatrixBase<Derived>& y,
                                                 Index target_len = 512) {
  using Scalar = typename Derived::Scalar;
  const Index n = y.size();
  if (n < 4) throw ValidationError("spline resampling needs at least 4 samples");
  if (target_len < 2) throw ValidationError("spline target length must be at least 2");

  // second derivatives M with M_0 = M_{n-1} = 0; Thomas algorithm on unit spacing
  Signal<Scalar> m = Signal<Scalar>::Zero(n);
  const Index k = n - 2;
  std::vector<Scalar> c(static_cast<std::size_t>(k)), d(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Scalar rhs = Scalar(6) * (y[i + 2] - Scalar(2) * y[i + 1] + y[i]);
    const Scalar denom = Scalar(4) - (i > 0 ? c[i - 1] : Scalar(0));
    c[i] = Scalar(1) / denom;
    d[i] = (rhs - (i > 0 ? d[i - 1] : Scalar(0))) / denom;
  }
  for (Index i = k - 1; i >= 0; --i) m[i + 1] = d[i] - (i + 1 < k ? c[i] * m[i + 2] : Scalar(0));

  Signal<Scalar> out(target_len);
  const Scalar step = static_cast<Scalar>(n - 1) / static_cast<Scalar>(target_len - 1);
  for (Index j = 0; j < target_len; ++j) {
    const Scalar p = step * static_cast<Scalar>(j);
    Index i = static_cast<Index>(p);
    if (i >= n - 1) i = n - 2;
    const Scalar t = p - static_cast<Scalar>(i);
    const Scalar u = Scalar(1) - t;
    const Scalar lin = y[i] + t * (y[i + 1] - y[i]);
    const Scalar curv = (m[i] * (u * u * u - u) + m[i + 1] * (t * t * t - t)) / Scalar(6);
    out[j] = lin + curv;
  }
  out[0] = y[0];
  out[target_len - 1] = y[n - 1];
  return out;
}

}  // namespace photogest::dsp
