#include "photogest/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "photogest/errors.hpp"
#include "photogest/rng.hpp"

namespace photogest {

void LabeledFeatures::validate() const {
  if (rows.rows() == 0) throw ValidationError("dataset is empty");
  if (static_cast<Index>(labels.size()) != rows.rows())
    throw ValidationError("label count does not match feature rows");
  for (int l : labels)
    if (l < 0 || l >= static_cast<int>(label_names.size()))
      throw ValidationError("label outside the label set");
  if (!rows.allFinite()) throw ValidationError("feature matrix contains non-finite values");
}

KnnModel::KnnModel(FeatureMatrix training, std::vector<int> labels, int num_classes, int k)
    : training_(std::move(training)), labels_(std::move(labels)), num_classes_(num_classes), k_(k) {
  if (k_ < 1) throw ValidationError("k must be at least 1");
  if (training_.rows() == 0) throw ValidationError("KNN needs training data");
  if (static_cast<Index>(labels_.size()) != training_.rows())
    throw ValidationError("label count does not match training rows");
  if (k_ > training_.rows()) throw ValidationError("k exceeds training size");
}

std::vector<Index> KnnModel::neighbours(const Eigen::Ref<const SignalXd>& query) const {
  if (query.size() != training_.cols())
    throw ValidationError("query width " + std::to_string(query.size()) +
                          " does not match model width " + std::to_string(training_.cols()));
  const SignalXd d2 = (training_.rowwise() - query.transpose()).rowwise().squaredNorm();
  std::vector<Index> idx(static_cast<std::size_t>(training_.rows()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::partial_sort(idx.begin(), idx.begin() + k_, idx.end(), [&](Index a, Index b) {
    return d2[a] < d2[b] || (d2[a] == d2[b] && a < b);
  });
  idx.resize(static_cast<std::size_t>(k_));
  return idx;
}

KnnModel::Prediction KnnModel::predict(const Eigen::Ref<const SignalXd>& query) const {
  const auto nn = neighbours(query);
  Prediction p;
  p.scores = SignalXd::Zero(num_classes_);
  SignalXd closest = SignalXd::Constant(num_classes_, std::numeric_limits<double>::infinity());
  for (Index i : nn) {
    const double d = (training_.row(i).transpose() - query).norm();
    const int c = labels_[static_cast<std::size_t>(i)];
    p.scores[c] += 1.0 / (d + kDistanceGuard);
    closest[c] = std::min(closest[c], d);
  }
  // argmax; ties -> smaller nearest distance -> lower label index
  int best = -1;
  for (int c = 0; c < num_classes_; ++c) {
    if (p.scores[c] == 0.0) continue;
    if (best < 0 || p.scores[c] > p.scores[best] ||
        (p.scores[c] == p.scores[best] && closest[c] < closest[best]))
      best = c;
  }
  p.label = best;
  return p;
}

Eigen::MatrixXd EvalReport::normalized_confusion() const {
  Eigen::MatrixXd out = confusion.cast<double>();
  for (Index r = 0; r < out.rows(); ++r) {
    const double s = out.row(r).sum();
    if (s > 0) out.row(r) /= s;
  }
  return out;
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int num_classes, int k_folds,
                                  std::uint64_t seed) {
  if (k_folds < 2) throw ValidationError("cross-validation needs at least 2 folds");
  std::vector<int> fold(labels.size(), -1);
  Rng root(seed);
  for (int c = 0; c < num_classes; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) members.push_back(i);
    if (members.empty()) continue;
    if (static_cast<int>(members.size()) < k_folds)
      throw ValidationError("class " + std::to_string(c) + " has " +
                            std::to_string(members.size()) + " samples, fewer than " +
                            std::to_string(k_folds) + " folds");
    Rng rng = root.split(static_cast<std::uint64_t>(c));
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[rng.below(i)]);
    for (std::size_t i = 0; i < members.size(); ++i)
      fold[members[i]] = static_cast<int>(i % static_cast<std::size_t>(k_folds));
  }
  return fold;
}

namespace {

void check_class_sizes(const std::vector<int>& labels, const std::vector<std::string>& names,
                       int k_folds) {
  std::vector<int> count(names.size(), 0);
  for (int l : labels) {
    if (l < 0 || l >= static_cast<int>(names.size()))
      throw ValidationError("label outside the label set");
    ++count[static_cast<std::size_t>(l)];
  }
  for (std::size_t c = 0; c < names.size(); ++c)
    if (count[c] > 0 && count[c] < k_folds)
      throw ValidationError("class '" + names[c] + "' has " + std::to_string(count[c]) +
                            " samples, fewer than " + std::to_string(k_folds) + " folds");
}

}  // namespace

EvalReport cross_validate(const std::vector<int>& labels,
                          const std::vector<std::string>& label_names,
                          const FoldFeaturizer& featurize, int k_folds, std::uint64_t seed, int k) {
  if (labels.empty()) throw ValidationError("dataset is empty");
  check_class_sizes(labels, label_names, k_folds);
  const int num_classes = static_cast<int>(label_names.size());

  EvalReport report;
  report.seed = seed;
  report.label_names = label_names;
  report.fold_of = stratified_folds(labels, num_classes, k_folds, seed);
  report.confusion = Eigen::MatrixXi::Zero(num_classes, num_classes);

  for (int f = 0; f < k_folds; ++f) {
    std::vector<Index> train, test;
    for (std::size_t i = 0; i < labels.size(); ++i)
      (report.fold_of[i] == f ? test : train).push_back(static_cast<Index>(i));
    if (test.empty()) continue;
    auto [train_x, test_x] = featurize(train, test);
    std::vector<int> train_y;
    for (Index i : train) train_y.push_back(labels[static_cast<std::size_t>(i)]);
    const KnnModel model(std::move(train_x), std::move(train_y), num_classes,
                         std::min<int>(k, static_cast<int>(train.size())));
    for (std::size_t t = 0; t < test.size(); ++t) {
      const int truth = labels[static_cast<std::size_t>(test[t])];
      const int pred = model.predict(test_x.row(static_cast<Index>(t)).transpose()).label;
      ++report.confusion(truth, pred);
    }
  }
  report.accuracy = static_cast<double>(report.confusion.trace()) /
                    static_cast<double>(report.confusion.sum());
  return report;
}

EvalReport cross_validate(const LabeledFeatures& data, int k_folds, std::uint64_t seed, int k) {
  data.validate();
  auto gather = [&](const std::vector<Index>& idx) {
    FeatureMatrix m(static_cast<Index>(idx.size()), data.rows.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) m.row(static_cast<Index>(r)) = data.rows.row(idx[r]);
    return m;
  };
  return cross_validate(
      data.labels, data.label_names,
      [&](const std::vector<Index>& train, const std::vector<Index>& test) {
        return std::make_pair(gather(train), gather(test));
      },
      k_folds, seed, k);
}

}  // namespace photogest
