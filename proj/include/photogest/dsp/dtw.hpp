#pragma once

// Dynamic time warping with absolute-difference local cost and the symmetric
// step set {(1,0), (0,1), (1,1)}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "photogest/errors.hpp"
#include "photogest/signal.hpp"

namespace photogest::dsp {

template <typename Scalar>
struct WarpPath {
  std::vector<std::pair<Index, Index>> steps;  ///< (i, j) from (0,0) to (n-1, m-1)
  Scalar cost = Scalar(0);
};

struct DtwOptions {
  /// Sakoe-Chiba half-width in samples of the longer series; none = unconstrained.
  std::optional<Index> band;
};

namespace detail {

inline bool in_band(Index i, Index j, Index n, Index m, const DtwOptions& opt) {
  if (!opt.band || n == 1 || m == 1) return true;
  const double fi = static_cast<double>(i) / static_cast<double>(n - 1);
  const double fj = static_cast<double>(j) / static_cast<double>(m - 1);
  return std::abs(fi - fj) * static_cast<double>(std::max(n, m) - 1) <=
         static_cast<double>(*opt.band);
}

template <typename A, typename B>
void check_inputs(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() == 0 || b.size() == 0) throw ValidationError("DTW inputs must be non-empty");
}

}  // namespace detail

/// Optimal warping cost only; O(m) memory.
template <typename A, typename B>
typename A::Scalar dtw_distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                                const DtwOptions& opt = {}) {
  using Scalar = typename A::Scalar;
  detail::check_inputs(a, b);
  const Index n = a.size(), m = b.size();
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  std::vector<Scalar> prev(static_cast<std::size_t>(m), inf), cur(static_cast<std::size_t>(m), inf);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (!detail::in_band(i, j, n, m, opt)) {
        cur[j] = inf;
        continue;
      }
      const Scalar c = std::abs(a[i] - b[j]);
      Scalar best;
      if (i == 0 && j == 0)
        best = Scalar(0);
      else {
        best = inf;
        if (i > 0 && j > 0) best = prev[j - 1];
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
      }
      cur[j] = best + c;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

/// Optimal warping cost and one optimal path. On equal predecessors the
/// backtrack prefers the diagonal, then (i-1, j), then (i, j-1).
template <typename A, typename B>
WarpPath<typename A::Scalar> dtw(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                                 const DtwOptions& opt = {}) {
  using Scalar = typename A::Scalar;
  detail::check_inputs(a, b);
  const Index n = a.size(), m = b.size();
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> acc(n, m);

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (!detail::in_band(i, j, n, m, opt)) {
        acc(i, j) = inf;
        continue;
      }
      const Scalar c = std::abs(a[i] - b[j]);
      Scalar best;
      if (i == 0 && j == 0)
        best = Scalar(0);
      else {
        best = inf;
        if (i > 0 && j > 0) best = acc(i - 1, j - 1);
        if (i > 0) best = std::min(best, acc(i - 1, j));
        if (j > 0) best = std::min(best, acc(i, j - 1));
      }
      acc(i, j) = best + c;
    }
  }

  WarpPath<Scalar> path;
  path.cost = acc(n - 1, m - 1);
  if (!std::isfinite(path.cost)) throw DomainError("DTW band excludes every admissible path");
  Index i = n - 1, j = m - 1;
  path.steps.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const Scalar diag = acc(i - 1, j - 1), up = acc(i - 1, j), left = acc(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.steps.emplace_back(i, j);
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

/// Series `x` repeated along its side of a warp path (first = true for the
/// first DTW argument).
template <typename Derived, typename Scalar>
Signal<typename Derived::Scalar> warp_expand(const Eigen::MatrixBase<Derived>& x,
                                             const WarpPath<Scalar>& path, bool first) {
  Signal<typename Derived::Scalar> out(static_cast<Index>(path.steps.size()));
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const Index idx = first ? path.steps[k].first : path.steps[k].second;
    out[static_cast<Index>(k)] = x[idx];
  }
  return out;
}

}  // namespace photogest::dsp
