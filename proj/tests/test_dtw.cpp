#include <doctest.h>

#include <cmath>

#include "photogest/dsp/dtw.hpp"
#include "photogest/dsp/normalize.hpp"
#include "photogest/dsp/spline.hpp"
#include "photogest/errors.hpp"
#include "photogest/gesture.hpp"
#include "photogest/rng.hpp"
#include "photogest/waveform.hpp"
#include "oracles.hpp"

using namespace photogest;
using namespace photogest::dsp;

namespace {

SignalXd vec(std::initializer_list<double> v) {
  SignalXd x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

std::vector<double> stdvec(const SignalXd& x) { return {x.data(), x.data() + x.size()}; }

SignalXd random_short(Rng& rng) {
  const Index n = 1 + static_cast<Index>(rng.below(6));
  SignalXd x(n);
  // values on a coarse grid so exact ties occur
  for (Index i = 0; i < n; ++i) x[i] = static_cast<double>(rng.below(5)) * 0.5;
  return x;
}

}  // namespace

TEST_CASE("hand examples") {
  CHECK(dtw_distance(vec({0, 1, 2}), vec({0, 2})) == 1.0);
  CHECK(oracle::dtw_exhaustive({0, 1, 2}, {0, 2}) == 1.0);

  const SignalXd x = vec({1, 3, 2, 5});
  const auto self = dtw(x, x);
  CHECK(self.cost == 0.0);
  REQUIRE(self.steps.size() == 4);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(self.steps[k] == std::pair<Index, Index>(static_cast<Index>(k), static_cast<Index>(k)));

  CHECK_THROWS_AS(dtw_distance(SignalXd(), x), ValidationError);
  CHECK_THROWS_AS(dtw(x, SignalXd()), ValidationError);
}

TEST_CASE("dynamic program equals the exhaustive path minimum") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const SignalXd a = random_short(rng), b = random_short(rng);
    const double ref = oracle::dtw_exhaustive(stdvec(a), stdvec(b));
    CHECK(dtw_distance(a, b) == ref);
    CHECK(dtw(a, b).cost == ref);
  }
}

TEST_CASE("warp paths are admissible and cost what they claim") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    SignalXd a(3 + static_cast<Index>(rng.below(20))), b(3 + static_cast<Index>(rng.below(20)));
    for (Index i = 0; i < a.size(); ++i) a[i] = rng.normal();
    for (Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
    const auto p = dtw(a, b);
    REQUIRE(!p.steps.empty());
    CHECK(p.steps.front() == std::pair<Index, Index>(0, 0));
    CHECK(p.steps.back() == std::pair<Index, Index>(a.size() - 1, b.size() - 1));
    double cost = 0.0;
    for (std::size_t k = 0; k < p.steps.size(); ++k) {
      const auto [i, j] = p.steps[k];
      cost += std::abs(a[i] - b[j]);
      if (k > 0) {
        const Index di = i - p.steps[k - 1].first, dj = j - p.steps[k - 1].second;
        CHECK(((di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1)));
      }
    }
    CHECK(cost == doctest::Approx(p.cost).epsilon(1e-12));
    CHECK(p.cost >= 0.0);
    CHECK(std::abs(dtw_distance(a, b) - dtw_distance(b, a)) <= 1e-12);
    CHECK(dtw_distance(a, b) == doctest::Approx(p.cost).epsilon(1e-12));
  }
}

TEST_CASE("optimum never exceeds the diagonal path") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    SignalXd a(30), b(30);
    for (Index i = 0; i < 30; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    CHECK(dtw_distance(a, b) <= (a - b).cwiseAbs().sum() + 1e-12);
  }
}

TEST_CASE("backtrack prefers the diagonal on ties") {
  // all-equal series: every path costs 0, the diagonal-first path must win
  const SignalXd a = SignalXd::Zero(4), b = SignalXd::Zero(3);
  const auto p = dtw(a, b);
  std::vector<std::pair<Index, Index>> expected{{0, 0}, {1, 0}, {2, 1}, {3, 2}};
  CHECK(p.steps == expected);
}

TEST_CASE("band constraint") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    SignalXd a(40), b(40);
    for (Index i = 0; i < 40; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    DtwOptions zero{Index{0}};
    CHECK(dtw_distance(a, b, zero) == doctest::Approx((a - b).cwiseAbs().sum()).epsilon(1e-12));
    DtwOptions wide{Index{100}};
    CHECK(dtw_distance(a, b, wide) == dtw_distance(a, b));
    DtwOptions mid{Index{5}};
    CHECK(dtw_distance(a, b, mid) >= dtw_distance(a, b));
    CHECK(dtw(a, b, mid).cost == dtw_distance(a, b, mid));
    for (const auto& [i, j] : dtw(a, b, mid).steps) CHECK(std::abs(i - j) <= 5);
  }
}

TEST_CASE("alignment removes most of a time-scaling difference") {
  const SolarCellSpec cell;
  const LightEnvironment env;
  GestureSpec slow, fast;
  slow.kind = fast.kind = GestureKind::UpDown;
  slow.speed_cm_s = 16.0;
  fast.speed_cm_s = 24.0;
  // same gesture embedded in a pause-padded stream, cut at different offsets
  const auto a = synthesize(slow, cell, env, 500.0, {0.2, 0.4});
  const auto b = synthesize(fast, cell, env, 500.0, {0.4, 0.1});
  const SignalXd za = zscore(resample_spline(a.samples, 512));
  const SignalXd zb = zscore(resample_spline(b.samples, 512));
  const double before = (za - zb).cwiseAbs().sum();
  const double after = dtw_distance(za, zb);
  CHECK(after < 0.1 * before);
}

TEST_CASE("warp expansion") {
  const SignalXd a = vec({1, 2, 3}), b = vec({1, 3});
  const auto p = dtw(a, b);
  const SignalXd ea = warp_expand(a, p, true), eb = warp_expand(b, p, false);
  CHECK(ea.size() == static_cast<Index>(p.steps.size()));
  CHECK((ea - eb).cwiseAbs().sum() == doctest::Approx(p.cost));
}
