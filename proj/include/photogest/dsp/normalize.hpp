#pragma once

#include <cmath>
#include <limits>

#include "photogest/errors.hpp"
#include "photogest/signal.hpp"

namespace photogest::dsp {

/// Population standard deviation.
template <typename Derived>
typename Derived::Scalar population_std(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar mean = x.mean();
  return std::sqrt((x.array() - mean).square().sum() / static_cast<Scalar>(x.size()));
}

/// (x - mean) / std with the population standard deviation.
/// Throws DegenerateInput for constant input.
template <typename Derived>
Signal<typename Derived::Scalar> zscore(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) throw ValidationError("zscore of an empty signal");
  const Scalar mean = x.mean();
  const Scalar sd = population_std(x);
  const Scalar scale = x.cwiseAbs().maxCoeff();
  if (!(sd > Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale))
    throw DegenerateInput("zscore of a constant signal");
  return (x.array() - mean) / sd;
}

}  // namespace photogest::dsp
