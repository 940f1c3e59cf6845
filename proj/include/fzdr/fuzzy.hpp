#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

enum class FuzzyInit { kmeanspp_cosine, random_docs };

/// Fuzzy spherical k-means settings. `k` is the reduced dimension and `q`
/// the fuzzifier.
struct FuzzyConfig {
  std::size_t k = 2;
  double q = 2.0;
  std::size_t max_iterations = 100;
  double min_improvement = 1e-5;
  std::uint64_t seed = 0;
  FuzzyInit init = FuzzyInit::kmeanspp_cosine;
  std::size_t threads = 1;

  /// Throws std::invalid_argument unless k >= 2, q > 1, max_iterations >= 1
  /// and min_improvement > 0.
  void validate() const;
};

/// Result of fit(). memberships is n x k (row-stochastic), prototypes is
/// k x m with unit rows.
struct FitResult {
  DenseMatrix memberships;
  DenseMatrix prototypes;
  /// Spherical criterion sum_f sum_j mu_fj^q (1 - cos(d_j, v_f)) after the
  /// initial membership step and after every iteration.
  std::vector<double> objective_trace;
  std::size_t iterations_run = 0;
  bool converged = false;
  /// Number of times an empty cluster was reseeded.
  std::size_t reseeded_clusters = 0;
};

/// Alternating optimization of memberships and unit-norm prototypes on the
/// L2-normalized rows of `dtm`. All-zero rows are left out of the
/// optimization and get uniform 1/k memberships.
FitResult fit(const SparseMatrix& dtm, const FuzzyConfig& cfg);
/// Same, starting from the given k x m prototypes (rows are normalized).
FitResult fit(const SparseMatrix& dtm, const FuzzyConfig& cfg, const DenseMatrix& initial_prototypes);

/// D_fj = 1 - cos(d_j, v_f), clamped at 0. `normalized` must have unit or
/// zero rows; zero rows get D = 1.
DenseMatrix cosine_dissimilarities(const SparseMatrix& normalized, const DenseMatrix& prototypes,
                                   std::size_t threads = 1);

/// Closed-form membership minimizer: mu_fj = 1 / sum_g (D_fj / D_gj)^(1/(q-1)).
/// Rows with zero entries split the membership evenly among them.
DenseMatrix update_memberships(const DenseMatrix& dissimilarities, double q);

struct PrototypeUpdate {
  DenseMatrix prototypes;
  /// Clusters that had no mass and were reseeded from the worst-fit document.
  std::vector<std::size_t> reseeded;
};

/// v_f = normalize(sum_j mu_fj^q d_j). Accumulation order is fixed, so the
/// result does not depend on `threads`.
PrototypeUpdate update_prototypes(const SparseMatrix& normalized, const DenseMatrix& memberships, double q,
                                  std::size_t threads = 1);

/// Euclidean fuzzy criterion sum_f sum_j mu_fj^q ||d_j - v_f||^2.
double objective(const SparseMatrix& normalized, const DenseMatrix& memberships, const DenseMatrix& prototypes,
                 double q);
/// Spherical criterion sum_f sum_j mu_fj^q (1 - cos(d_j, v_f)).
double spherical_objective(const SparseMatrix& normalized, const DenseMatrix& memberships,
                           const DenseMatrix& prototypes, double q);

/// Fold-in: one membership step against frozen prototypes. Rows of
/// `new_dtm` are normalized here; all-zero rows get 1/k.
DenseMatrix transform(const SparseMatrix& new_dtm, const DenseMatrix& prototypes, double q,
                      std::size_t threads = 1);

}  // namespace fzdr
