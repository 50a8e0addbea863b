#include <doctest.h>

#include <cmath>

#include "photogest/dsp/wavelet.hpp"
#include "photogest/errors.hpp"
#include "photogest/rng.hpp"

using namespace photogest;
using namespace photogest::dsp;

namespace {

SignalXd random_signal(Rng& rng, Index n) {
  SignalXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.normal();
  return x;
}

// Direct periodized analysis at one level, written independently of the
// library's loops: a[k] = sum_n h[n] x[(2k+n) mod N].
std::pair<SignalXd, SignalXd> reference_step(const SignalXd& x, WaveletKind kind) {
  const auto h = scaling_filter(kind);
  const auto L = static_cast<Index>(h.size());
  const Index N = x.size();
  SignalXd a = SignalXd::Zero(N / 2), d = SignalXd::Zero(N / 2);
  for (Index k = 0; k < N / 2; ++k)
    for (Index n = 0; n < L; ++n) {
      const double g = ((n % 2) ? -1.0 : 1.0) * h[static_cast<std::size_t>(L - 1 - n)];
      a[k] += h[static_cast<std::size_t>(n)] * x[(2 * k + n) % N];
      d[k] += g * x[(2 * k + n) % N];
    }
  return {a, d};
}

}  // namespace

TEST_CASE("filters are orthonormal") {
  for (auto kind : all_wavelets()) {
    const auto h = scaling_filter(kind);
    const auto L = h.size();
    double sum = 0.0;
    for (double v : h) sum += v;
    CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (std::size_t shift = 0; shift < L; shift += 2) {
      double dot = 0.0;
      for (std::size_t n = 0; n + shift < L; ++n) dot += h[n] * h[n + shift];
      CHECK(std::abs(dot - (shift == 0 ? 1.0 : 0.0)) < 1e-12);
    }
  }
  CHECK(scaling_filter(WaveletKind::Haar).size() == 2);
  CHECK(scaling_filter(WaveletKind::Db2).size() == 4);
  CHECK(scaling_filter(WaveletKind::Db4).size() == 8);
  CHECK(scaling_filter(WaveletKind::Coif2).size() == 12);
  const auto haar = scaling_filter(WaveletKind::Haar), db1 = scaling_filter(WaveletKind::Db1);
  CHECK(std::equal(haar.begin(), haar.end(), db1.begin(), db1.end()));
}

TEST_CASE("wavelet names") {
  for (auto k : all_wavelets()) CHECK(parse_wavelet(to_string(k)) == k);
  CHECK(to_string(WaveletKind::Coif2) == "coif2");
  CHECK_FALSE(parse_wavelet("sym4").has_value());
}

TEST_CASE("haar hand examples") {
  SignalXd ones = SignalXd::Ones(4);
  const auto c = dwt_forward(ones, WaveletKind::Haar, 2);
  CHECK(c.detail(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(c.detail(2).cwiseAbs().maxCoeff() == 0.0);

  SignalXd x(2);
  x << 2.0, 0.0;
  const auto h = dwt_forward(x, WaveletKind::Haar, 1);
  CHECK(h.approximation[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.detail(1)[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("level lengths under periodization") {
  Rng rng(1);
  const SignalXd x = random_signal(rng, 512);
  for (auto kind : all_wavelets()) {
    const auto c = dwt_forward(x, kind, 5);
    CHECK(c.levels() == 5);
    for (int j = 1; j <= 5; ++j) CHECK(c.detail(j).size() == (512 >> j));
    CHECK(c.approximation.size() == 16);
    CHECK(c.original_length == 512);
  }
}

TEST_CASE("matches a direct periodized convolution") {
  Rng rng(5);
  const SignalXd x = random_signal(rng, 64);
  for (auto kind : all_wavelets()) {
    const auto c = dwt_forward(x, kind, 2);
    const auto [a1, d1] = reference_step(x, kind);
    const auto [a2, d2] = reference_step(a1, kind);
    CHECK((c.detail(1) - d1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((c.detail(2) - d2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((c.approximation - a2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("round trip, zero coefficients and float scalars") {
  Rng rng(2);
  const SignalXd x = random_signal(rng, 256);
  for (auto kind : all_wavelets()) {
    const auto c = dwt_forward(x, kind, 4);
    CHECK((dwt_inverse(c) - x).cwiseAbs().maxCoeff() <= 1e-10);
    auto z = c;
    z.approximation.setZero();
    for (auto& d : z.details) d.setZero();
    CHECK(dwt_inverse(z).cwiseAbs().maxCoeff() == 0.0);
  }
  const Eigen::VectorXf xf = x.cast<float>();
  const auto cf = dwt_forward(xf, WaveletKind::Db2, 3);
  CHECK((dwt_inverse(cf) - xf).cwiseAbs().maxCoeff() < 1e-4f);
}

TEST_CASE("length and level validation") {
  SignalXd x = SignalXd::Zero(100);
  CHECK_THROWS_AS(dwt_forward(x, WaveletKind::Db2, 3), ValidationError);
  CHECK_THROWS_AS(dwt_forward(x, WaveletKind::Db2, 0), ValidationError);
  try {
    dwt_forward(x, WaveletKind::Db2, 3);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("8") != std::string::npos);
  }
  auto c = dwt_forward(SignalXd::Zero(64), WaveletKind::Db2, 2);
  c.details[0].resize(5);
  CHECK_THROWS_AS(dwt_inverse(c), ValidationError);
}
