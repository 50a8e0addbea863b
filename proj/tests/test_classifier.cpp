#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "photogest/classifier.hpp"
#include "photogest/errors.hpp"
#include "photogest/rng.hpp"
#include "oracles.hpp"

using namespace photogest;

namespace {

LabeledFeatures blobs(int classes, int per_class, double separation, double spread,
                      std::uint64_t seed, Index dims = 3) {
  Rng rng(seed);
  LabeledFeatures d;
  for (int c = 0; c < classes; ++c) d.label_names.push_back("c" + std::to_string(c));
  d.rows.resize(classes * per_class, dims);
  Index r = 0;
  for (int c = 0; c < classes; ++c)
    for (int i = 0; i < per_class; ++i, ++r) {
      for (Index k = 0; k < dims; ++k) d.rows(r, k) = rng.normal() * spread;
      d.rows(r, c % dims) += separation * (1 + c / dims);
      d.labels.push_back(c);
    }
  return d;
}

std::vector<std::vector<double>> to_rows(const FeatureMatrix& m) {
  std::vector<std::vector<double>> out;
  for (Index r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).data(), m.row(r).data() + m.cols());
  return out;
}

}  // namespace

TEST_CASE("single training sample") {
  FeatureMatrix x(1, 2);
  x << 0.0, 0.0;
  KnnModel m(x, {2}, 3, 1);
  CHECK(m.predict(SignalXd::Constant(2, 5.0)).label == 2);
  CHECK_THROWS_AS(KnnModel(x, {0}, 1, 2), ValidationError);
  CHECK_THROWS_AS(KnnModel(x, {0}, 1, 0), ValidationError);
  CHECK_THROWS_AS(m.predict(SignalXd::Zero(3)), ValidationError);
}

TEST_CASE("exact match dominates") {
  const auto d = blobs(3, 20, 1.0, 1.0, 5);
  KnnModel m(d.rows, d.labels, 3, 10);
  for (Index r = 0; r < d.rows.rows(); r += 7)
    CHECK(m.predict(d.rows.row(r).transpose()).label == d.labels[static_cast<std::size_t>(r)]);
}

TEST_CASE("hand-built 2D geometry with k = 3") {
  FeatureMatrix x(5, 2);
  x << 0, 0,  //
      1, 0,   //
      0, 2,   //
      5, 5,   //
      6, 5;
  const std::vector<int> y{0, 1, 1, 2, 2};
  KnnModel m(x, y, 3, 3);
  SignalXd q(2);
  q << 0.4, 0.0;
  const auto nn = m.neighbours(q);
  CHECK(nn == std::vector<Index>{0, 1, 2});
  // class 0: 1/0.4 = 2.5 beats class 1: 1/0.6 + 1/sqrt(0.16+4) = 2.16
  const auto p = m.predict(q);
  CHECK(p.scores[0] == doctest::Approx(1 / 0.4));
  CHECK(p.scores[1] == doctest::Approx(1 / 0.6 + 1 / std::sqrt(4.16)));
  CHECK(p.label == 0);
  const auto ref = oracle::knn_brute(to_rows(x), y, 3, {0.4, 0.0}, 3);
  CHECK(ref.label == p.label);
}

TEST_CASE("ties between classes") {
  FeatureMatrix x(2, 1);
  x << -1.0, 1.0;
  KnnModel m(x, {1, 0}, 2, 2);
  SignalXd q(1);
  q << 0.0;
  // equal scores and equal nearest distances: lower label index
  CHECK(m.predict(q).label == 0);
}

TEST_CASE("matches the brute-force oracle") {
  Rng rng(31);
  const auto train = blobs(4, 50, 1.0, 1.5, 77, 4);
  const auto rows = to_rows(train.rows);
  for (int k : {1, 3, 10}) {
    KnnModel m(train.rows, train.labels, 4, k);
    for (int q = 0; q < 100; ++q) {
      std::vector<double> v(4);
      for (auto& e : v) e = rng.normal() * 2;
      const auto ref = oracle::knn_brute(rows, train.labels, 4, v, k);
      const auto got = m.predict(Eigen::Map<const SignalXd>(v.data(), 4));
      CHECK(got.label == ref.label);
      // distances are summed in a different order, so scores agree to rounding
      for (int c = 0; c < 4; ++c)
        CHECK(got.scores[c] == doctest::Approx(ref.scores[static_cast<std::size_t>(c)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("neighbour set depends on distance order only") {
  // the weighted vote is not invariant under monotone transforms of the
  // distances, but the neighbour set is: rescaling every feature keeps it
  const auto train = blobs(3, 40, 1.0, 1.0, 8);
  KnnModel a(train.rows, train.labels, 3, 10);
  KnnModel b(FeatureMatrix(train.rows * 3.0), train.labels, 3, 10);
  Rng rng(2);
  for (int q = 0; q < 200; ++q) {
    SignalXd v(3);
    for (Index i = 0; i < 3; ++i) v[i] = rng.normal();
    CHECK(a.neighbours(v) == b.neighbours(SignalXd(v * 3.0)));
    CHECK(a.predict(v).label == b.predict(SignalXd(v * 3.0)).label);
  }
}

TEST_CASE("stratified folds form a balanced disjoint cover") {
  std::vector<int> labels;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 23 + c; ++i) labels.push_back(c);
  const auto folds = stratified_folds(labels, 3, 10, 4);
  REQUIRE(folds.size() == labels.size());
  for (int c = 0; c < 3; ++c) {
    std::vector<int> per(10, 0);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) ++per[static_cast<std::size_t>(folds[i])];
    CHECK(*std::max_element(per.begin(), per.end()) - *std::min_element(per.begin(), per.end()) <= 1);
  }
  for (int f : folds) CHECK((f >= 0 && f < 10));
  CHECK(stratified_folds(labels, 3, 10, 4) == folds);
  CHECK(stratified_folds(labels, 3, 10, 5) != folds);
}

TEST_CASE("separable blobs classify perfectly") {
  const auto d = blobs(5, 30, 10.0, 0.5, 3);
  const auto r = cross_validate(d, 10, 1);
  CHECK(r.accuracy == 1.0);
  CHECK(r.confusion.trace() == 150);
  CHECK(r.seed == 1u);
}

TEST_CASE("shuffled labels give chance accuracy") {
  auto d = blobs(6, 100, 3.0, 1.0, 12);
  Rng rng(6);
  for (std::size_t i = d.labels.size() - 1; i > 0; --i)
    std::swap(d.labels[i], d.labels[static_cast<std::size_t>(rng.below(i + 1))]);
  const auto r = cross_validate(d, 10, 9);
  CHECK(r.accuracy >= 1.0 / 6 - 0.08);
  CHECK(r.accuracy <= 1.0 / 6 + 0.08);
}

TEST_CASE("report accounting") {
  const auto d = blobs(4, 25, 1.5, 1.0, 10);
  const auto r = cross_validate(d, 5, 2, 7);
  CHECK(r.confusion.sum() == 100);
  CHECK(r.accuracy == static_cast<double>(r.confusion.trace()) / 100.0);
  for (Index c = 0; c < 4; ++c) CHECK(r.confusion.row(c).sum() == 25);
  const auto n = r.normalized_confusion();
  for (Index c = 0; c < 4; ++c) CHECK(n.row(c).sum() == doctest::Approx(1.0));
  CHECK(r.label_names == d.label_names);

  const auto again = cross_validate(d, 5, 2, 7);
  CHECK(again.confusion == r.confusion);
  CHECK(again.fold_of == r.fold_of);
}

TEST_CASE("classes smaller than the fold count are rejected by name") {
  auto d = blobs(2, 12, 3.0, 1.0, 1);
  d.label_names = {"big", "tiny"};
  d.rows.conservativeResize(15, Eigen::NoChange);
  d.labels.resize(15);
  try {
    cross_validate(d, 10, 1);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("tiny") != std::string::npos);
  }
}
