#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

/// Dense features with binary labels (0 negative, 1 positive).
struct LabeledFeatures {
  DenseMatrix features;
  std::vector<int> labels;

  /// Throws std::invalid_argument on NaN features, non-binary labels, a
  /// length mismatch, or (when `need_both_classes`) a single-class set.
  void validate(bool need_both_classes = true) const;
};

struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  /// +1: predict positive when x > threshold; -1: positive when x <= threshold.
  int polarity = 1;
  double alpha = 0.0;
  /// Weighted training error of this stump when it was added.
  double weighted_error = 0.0;

  int predict(const double* row) const { return (row[feature] > threshold) == (polarity > 0) ? 1 : 0; }
};

struct AdaBoostModel {
  std::size_t width = 0;
  std::vector<Stump> stumps;
};

struct TreeNode {
  // Leaf when feature == npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t feature = npos;
  double threshold = 0.0;
  std::uint32_t left = 0;   // x <= threshold
  std::uint32_t right = 0;  // x > threshold
  int label = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int predict(const double* row) const;
};

struct RandomForestModel {
  std::size_t width = 0;
  std::vector<DecisionTree> trees;
};

enum class ClassifierKind { adaboost_stumps, random_forest };

std::string_view to_string(ClassifierKind k);
ClassifierKind classifier_from_string(std::string_view name);

using TrainedClassifier = std::variant<AdaBoostModel, RandomForestModel>;

/// Discrete AdaBoost over axis-aligned stumps. Stops early once a stump has
/// zero weighted error, or when no stump beats chance.
TrainedClassifier train_adaboost(const LabeledFeatures& data, std::size_t rounds, std::uint64_t seed = 0);

/// Bagged CART trees (Gini), sqrt(width) candidate features per split,
/// majority vote. Trees are built in parallel with per-tree seeds, so the
/// result is independent of `threads`.
TrainedClassifier train_random_forest(const LabeledFeatures& data, std::size_t n_trees, std::size_t max_depth,
                                      std::uint64_t seed, std::size_t threads = 1);

std::vector<int> predict(const TrainedClassifier& model, const DenseMatrix& features);

struct ConfusionMatrix {
  std::size_t tn = 0, fp = 0, fn = 0, tp = 0;
  std::size_t total() const { return tn + fp + fn + tp; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& truth);
/// (tp + tn) / total; throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

}  // namespace fzdr
