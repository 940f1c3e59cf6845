#include "fzdr/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "fzdr/parallel.hpp"

namespace fzdr {

void LabeledFeatures::validate(bool need_both_classes) const {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw std::invalid_argument("labeled features: " + std::to_string(features.rows()) + " rows but " +
                                std::to_string(labels.size()) + " labels");
  if (features.hasNaN()) throw std::invalid_argument("labeled features: NaN feature");
  std::size_t pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("labeled features: labels must be 0 or 1");
    pos += static_cast<std::size_t>(y);
  }
  if (need_both_classes && (pos == 0 || pos == labels.size()))
    throw std::invalid_argument("labeled features: both classes must be present");
}

std::string_view to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::adaboost_stumps: return "adaboost";
    case ClassifierKind::random_forest: return "random_forest";
  }
  return "unknown";
}

ClassifierKind classifier_from_string(std::string_view name) {
  if (name == "adaboost" || name == "adaboost_stumps") return ClassifierKind::adaboost_stumps;
  if (name == "random_forest" || name == "rf") return ClassifierKind::random_forest;
  throw std::invalid_argument("unknown classifier '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- AdaBoost

namespace {

// Best stump under sample weights `w`. Candidate thresholds are midpoints
// between consecutive distinct values of each feature.
Stump best_stump(const LabeledFeatures& data, const std::vector<std::vector<std::size_t>>& order,
                 const std::vector<double>& w) {
  const std::size_t n = data.labels.size();
  double total_pos = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += w[i];
    if (data.labels[i]) total_pos += w[i];
  }
  Stump best;
  // Baseline: a constant prediction of the weighted majority class.
  double best_err = std::min(total - total_pos, total_pos);
  best.feature = 0;
  best.polarity = total - total_pos <= total_pos ? 1 : -1;
  best.threshold = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < order.size(); ++f) {
    const auto& idx = order[f];
    double pos_below = 0.0, neg_below = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      const std::size_t i = idx[p];
      (data.labels[i] ? pos_below : neg_below) += w[i];
      const double x = data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
      const double x_next = data.features(static_cast<Eigen::Index>(idx[p + 1]), static_cast<Eigen::Index>(f));
      if (x == x_next) continue;
      // polarity +1: positive above. Errors: positives below + negatives above.
      const double neg_above = (total - total_pos) - neg_below;
      const double err_up = pos_below + neg_above;
      const double err_down = total - err_up;
      if (err_up < best_err) {
        best_err = err_up;
        best = {f, 0.5 * (x + x_next), 1, 0.0, 0.0};
      }
      if (err_down < best_err) {
        best_err = err_down;
        best = {f, 0.5 * (x + x_next), -1, 0.0, 0.0};
      }
    }
  }
  best.weighted_error = std::max(0.0, best_err / total);
  return best;
}

std::vector<std::vector<std::size_t>> sorted_orders(const DenseMatrix& x) {
  std::vector<std::vector<std::size_t>> order(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    auto& idx = order[static_cast<std::size_t>(f)];
    idx.resize(static_cast<std::size_t>(x.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return x(static_cast<Eigen::Index>(a), f) < x(static_cast<Eigen::Index>(b), f);
    });
  }
  return order;
}

}  // namespace

TrainedClassifier train_adaboost(const LabeledFeatures& data, std::size_t rounds, std::uint64_t /*seed*/) {
  if (rounds < 1) throw std::invalid_argument("adaboost: rounds must be >= 1");
  data.validate();
  const std::size_t n = data.labels.size();
  const auto order = sorted_orders(data.features);
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  AdaBoostModel model{static_cast<std::size_t>(data.features.cols()), {}};
  // Caps alpha for a perfect stump.
  constexpr double kMinError = 1e-10;
  for (std::size_t t = 0; t < rounds; ++t) {
    Stump s = best_stump(data, order, w);
    if (s.weighted_error >= 0.5) break;
    const double err = std::max(s.weighted_error, kMinError);
    s.alpha = 0.5 * std::log((1.0 - err) / err);
    model.stumps.push_back(s);
    if (s.weighted_error <= 0.0) break;
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool correct = s.predict(&data.features(static_cast<Eigen::Index>(i), 0)) == data.labels[i];
      w[i] *= std::exp(correct ? -s.alpha : s.alpha);
      z += w[i];
    }
    for (auto& wi : w) wi /= z;
  }
  return model;
}

// ----------------------------------------------------------- Random forest

int DecisionTree::predict(const double* row) const {
  std::uint32_t at = 0;
  while (nodes[at].feature != TreeNode::npos) at = row[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left : nodes[at].right;
  return nodes[at].label;
}

namespace {

struct TreeBuilder {
  const LabeledFeatures& data;
  std::size_t max_depth;
  std::size_t features_per_split;
  std::mt19937_64 rng;
  DecisionTree tree;

  static double gini(double pos, double total) {
    if (total <= 0.0) return 0.0;
    const double p = pos / total;
    return 2.0 * p * (1.0 - p);
  }

  std::uint32_t build(std::vector<std::size_t>& rows, std::size_t depth) {
    std::size_t pos = 0;
    for (auto r : rows) pos += static_cast<std::size_t>(data.labels[r]);
    const auto id = static_cast<std::uint32_t>(tree.nodes.size());
    tree.nodes.push_back({});
    // Ties go to the negative class.
    tree.nodes[id].label = 2 * pos > rows.size() ? 1 : 0;
    if (pos == 0 || pos == rows.size() || depth >= max_depth || rows.size() < 2) return id;

    const std::size_t width = static_cast<std::size_t>(data.features.cols());
    std::vector<std::size_t> candidates(width);
    std::iota(candidates.begin(), candidates.end(), 0);
    for (std::size_t i = 0; i < features_per_split; ++i)
      std::swap(candidates[i], candidates[std::uniform_int_distribution<std::size_t>(i, width - 1)(rng)]);
    candidates.resize(features_per_split);

    const double n = static_cast<double>(rows.size());
    double best_impurity = gini(static_cast<double>(pos), n) * n;
    std::size_t best_feature = TreeNode::npos;
    double best_threshold = 0.0;
    std::vector<std::size_t> sorted = rows;
    for (auto f : candidates) {
      const auto col = static_cast<Eigen::Index>(f);
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        const double xa = data.features(static_cast<Eigen::Index>(a), col);
        const double xb = data.features(static_cast<Eigen::Index>(b), col);
        return xa < xb || (xa == xb && a < b);
      });
      double left_pos = 0.0;
      for (std::size_t p = 0; p + 1 < sorted.size(); ++p) {
        left_pos += data.labels[sorted[p]];
        const double x = data.features(static_cast<Eigen::Index>(sorted[p]), col);
        const double x_next = data.features(static_cast<Eigen::Index>(sorted[p + 1]), col);
        if (x == x_next) continue;
        const double nl = static_cast<double>(p + 1);
        const double nr = n - nl;
        const double impurity = gini(left_pos, nl) * nl + gini(static_cast<double>(pos) - left_pos, nr) * nr;
        if (impurity < best_impurity - 1e-12) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = 0.5 * (x + x_next);
        }
      }
    }
    if (best_feature == TreeNode::npos) return id;

    std::vector<std::size_t> left, right;
    for (auto r : rows)
      (data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(best_feature)) <= best_threshold ? left
                                                                                                          : right)
          .push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const auto l = build(left, depth + 1);
    const auto rr = build(right, depth + 1);
    tree.nodes[id].feature = best_feature;
    tree.nodes[id].threshold = best_threshold;
    tree.nodes[id].left = l;
    tree.nodes[id].right = rr;
    return id;
  }
};

}  // namespace

TrainedClassifier train_random_forest(const LabeledFeatures& data, std::size_t n_trees, std::size_t max_depth,
                                      std::uint64_t seed, std::size_t threads) {
  if (n_trees < 1) throw std::invalid_argument("random forest: n_trees must be >= 1");
  if (max_depth < 1) throw std::invalid_argument("random forest: max_depth must be >= 1");
  data.validate();
  const std::size_t n = data.labels.size();
  const std::size_t width = static_cast<std::size_t>(data.features.cols());
  const std::size_t per_split =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(width)))), 1, width);
  RandomForestModel model{width, std::vector<DecisionTree>(n_trees)};
  parallel_for(n_trees, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      TreeBuilder b{data, max_depth, per_split, std::mt19937_64(derive_seed(seed, {t})), {}};
      std::vector<std::size_t> rows(n);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (auto& r : rows) r = pick(b.rng);
      b.build(rows, 0);
      model.trees[t] = std::move(b.tree);
    }
  });
  return model;
}

std::vector<int> predict(const TrainedClassifier& model, const DenseMatrix& features) {
  const std::size_t width = std::visit([](const auto& m) { return m.width; }, model);
  if (static_cast<std::size_t>(features.cols()) != width)
    throw std::invalid_argument("predict: feature width " + std::to_string(features.cols()) + " != trained width " +
                                std::to_string(width));
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    const double* row = &features(r, 0);
    out[static_cast<std::size_t>(r)] = std::visit(
        [row](const auto& m) -> int {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, AdaBoostModel>) {
            double score = 0.0;
            for (const auto& s : m.stumps) score += s.alpha * (s.predict(row) ? 1.0 : -1.0);
            return score > 0.0 ? 1 : 0;
          } else {
            std::size_t votes = 0;
            for (const auto& t : m.trees) votes += static_cast<std::size_t>(t.predict(row));
            return 2 * votes > m.trees.size() ? 1 : 0;
          }
        },
        model);
  }
  return out;
}

ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("confusion: " + std::to_string(predicted.size()) + " predictions vs " +
                                std::to_string(truth.size()) + " labels");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      (predicted[i] ? cm.tp : cm.fn) += 1;
    } else {
      (predicted[i] ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

}  // namespace fzdr
