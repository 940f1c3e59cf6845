#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>

#include "fzdr/fuzzy.hpp"
#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

struct SvdOptions {
  std::size_t oversample = 10;
  std::size_t power_iters = 2;
  std::uint64_t seed = 0;
  /// Exact dense SVD is used when min(rows, cols) is at most this.
  std::size_t exact_threshold = 64;
};

/// A ~= U diag(S) V^T with U n x k, V m x k.
struct SvdResult {
  DenseMatrix U;
  Eigen::VectorXd S;
  DenseMatrix V;

  /// U diag(S), the LSA document coordinates.
  DenseMatrix reduced() const { return U * S.asDiagonal(); }
};

/// Column-centered data ~= scores * loadings^T.
struct PcaResult {
  DenseMatrix scores;    // n x k
  DenseMatrix loadings;  // m x k
  Eigen::VectorXd column_means;
  Eigen::VectorXd singular_values;
};

/// Randomized range finder followed by a small dense SVD; exact below the
/// size threshold. Each right singular vector's largest-magnitude entry is
/// positive. Throws std::invalid_argument unless 1 <= k <= min(n, m).
SvdResult truncated_svd(const SparseMatrix& a, std::size_t k, const SvdOptions& opts = {});

/// PCA with implicit column centering (the centered matrix is never
/// formed). Needs n >= 2 and 1 <= k <= min(n - 1, m).
PcaResult pca_scores(const SparseMatrix& a, std::size_t k, const SvdOptions& opts = {});

enum class ReduceMethod { fc, svd, pca };

std::string_view to_string(ReduceMethod m);
ReduceMethod reduce_method_from_string(std::string_view name);

struct ReduceConfig {
  FuzzyConfig fuzzy;  // k is taken from the reduce() argument
  SvdOptions svd;
};

/// Frozen state needed to map unseen rows into the reduced space.
struct FuzzyModel {
  DenseMatrix prototypes;  // k x m
  double q = 2.0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  bool converged = false;
};
struct SvdModel {
  DenseMatrix V;  // m x k
  Eigen::VectorXd S;
};
struct PcaModel {
  DenseMatrix loadings;  // m x k
  Eigen::VectorXd column_means;
  Eigen::VectorXd singular_values;
};
using ReductionModel = std::variant<FuzzyModel, SvdModel, PcaModel>;

struct Reduction {
  DenseMatrix representation;  // n x k
  ReductionModel model;
};

/// Fits the chosen method and returns the n x k representation (memberships,
/// U S, or PCA scores) together with the model.
Reduction fit_reduction(const SparseMatrix& dtm, ReduceMethod method, std::size_t k, const ReduceConfig& cfg);

/// Representation only.
DenseMatrix reduce(const SparseMatrix& dtm, ReduceMethod method, std::size_t k, const ReduceConfig& cfg);

/// Maps new rows with a fitted model: fuzzy fold-in, projection onto V, or
/// centering with the training means followed by projection onto the loadings.
DenseMatrix apply_reduction(const ReductionModel& model, const SparseMatrix& rows, std::size_t threads = 1);

}  // namespace fzdr
