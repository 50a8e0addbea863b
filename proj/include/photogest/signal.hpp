#pragma once

#include <Eigen/Dense>

namespace photogest {

template <typename Scalar>
using Signal = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using SignalXd = Signal<double>;

using Eigen::Index;

}  // namespace photogest
