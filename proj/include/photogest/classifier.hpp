#pragma once

// Distance-weighted k-nearest-neighbour classification and stratified
// k-fold cross-validation.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "photogest/signal.hpp"

namespace photogest {

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row-per-sample features with integer labels into `label_names`.
struct LabeledFeatures {
  FeatureMatrix rows;
  std::vector<int> labels;
  std::vector<std::string> label_names;

  Index size() const noexcept { return rows.rows(); }
  void validate() const;
};

class KnnModel {
 public:
  static constexpr double kDistanceGuard = 1e-12;

  KnnModel(FeatureMatrix training, std::vector<int> labels, int num_classes, int k = 10);

  struct Prediction {
    int label = -1;
    SignalXd scores;  ///< sum of 1 / (d + guard) per class
  };

  Prediction predict(const Eigen::Ref<const SignalXd>& query) const;

  /// Indices of the k nearest training rows, nearest first (ties by index).
  std::vector<Index> neighbours(const Eigen::Ref<const SignalXd>& query) const;

  int k() const noexcept { return k_; }
  Index dims() const noexcept { return training_.cols(); }

 private:
  FeatureMatrix training_;
  std::vector<int> labels_;
  int num_classes_;
  int k_;
};

struct EvalReport {
  double accuracy = 0.0;
  Eigen::MatrixXi confusion;  ///< row = truth, column = prediction
  std::vector<std::string> label_names;
  std::vector<int> fold_of;  ///< fold index per sample
  std::uint64_t seed = 0;

  Eigen::MatrixXd normalized_confusion() const;
};

/// Stratified fold assignment: per class, a seeded shuffle dealt round-robin.
std::vector<int> stratified_folds(const std::vector<int>& labels, int num_classes, int k_folds,
                                  std::uint64_t seed);

/// Per-fold feature builder: receives training and test sample indices and
/// returns (train features, test features) in that order. Lets callers fit
/// fold-local preprocessing such as alignment references.
using FoldFeaturizer = std::function<std::pair<FeatureMatrix, FeatureMatrix>(
    const std::vector<Index>& train, const std::vector<Index>& test)>;

EvalReport cross_validate(const LabeledFeatures& data, int k_folds, std::uint64_t seed, int k = 10);

EvalReport cross_validate(const std::vector<int>& labels,
                          const std::vector<std::string>& label_names,
                          const FoldFeaturizer& featurize, int k_folds, std::uint64_t seed,
                          int k = 10);

}  // namespace photogest
