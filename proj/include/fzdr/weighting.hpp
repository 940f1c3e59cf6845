#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fzdr/corpus.hpp"
#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

enum class WeightMethod { none, entropy, gfidf, idf, idf_df, normal, probidf };

std::string_view to_string(WeightMethod m);
/// Accepts the names produced by to_string (plus "gf-idf"); throws std::invalid_argument otherwise.
WeightMethod weight_method_from_string(std::string_view name);

/// One multiplicative weight per vocabulary term.
struct GlobalWeightVector {
  WeightMethod method = WeightMethod::none;
  std::vector<double> weights;
};

// Every method maps a term with zero total frequency to weight 0.

/// 1 + sum_j p_ij log2 p_ij / log2 n with p_ij = tf_ij / gf_i. Needs n >= 2.
GlobalWeightVector entropy_weights(const SparseMatrix& dtm);
/// gf_i / df_i.
GlobalWeightVector gfidf_weights(const SparseMatrix& dtm);
/// log2(n / gf_i), the global-frequency form. With `use_document_frequency`
/// the denominator is df_i instead (the usual IDF).
GlobalWeightVector idf_weights(const SparseMatrix& dtm, bool use_document_frequency = false);
/// 1 / sqrt(sum_j tf_ij^2).
GlobalWeightVector normal_weights(const SparseMatrix& dtm);
/// log2((n - df_i) / df_i), clamped below at `floor` (df_i = n gives the floor).
/// Weights can be negative.
GlobalWeightVector probidf_weights(const SparseMatrix& dtm, double floor = -8.0);

/// Dispatches on `method`; `none` yields all-ones.
GlobalWeightVector compute_weights(const SparseMatrix& dtm, WeightMethod method);

/// out(j,i) = tf_ij * w_i. Entries whose product is zero are dropped.
SparseMatrix apply_weights(const SparseMatrix& dtm, const GlobalWeightVector& gw);

/// CSV with header `term,method,weight`.
void write_weights_csv(const GlobalWeightVector& gw, const Vocabulary& vocab, const std::string& path);
/// Reads a weights CSV; terms must match `vocab` row for row.
GlobalWeightVector read_weights_csv(const std::string& path, const Vocabulary& vocab);

}  // namespace fzdr
