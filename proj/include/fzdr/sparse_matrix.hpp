#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fzdr {

/// Row-major dense matrix used for every reduced representation.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A (column, value) pair used to assemble a SparseMatrix row.
struct SparseEntry {
  std::uint32_t col;
  double value;
};

/// Compressed sparse row matrix.
///
/// Invariants, checked on construction: `row_offsets` has n_rows + 1
/// monotone entries starting at 0 and ending at nnz, column indices are
/// strictly increasing within a row and < n_cols, no stored value is zero
/// and every value is finite.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
               std::vector<std::uint32_t> col_indices, std::vector<double> values);

  /// Builds from unsorted per-row entries. Entries sharing a column are
  /// summed; zero results are dropped.
  static SparseMatrix from_rows(std::size_t n_cols, const std::vector<std::vector<SparseEntry>>& rows);
  static SparseMatrix from_dense(const DenseMatrix& dense);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::uint32_t> row_indices(std::size_t r) const {
    return {col_indices_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
  }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::uint32_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  /// Value at (r, c), zero when not stored.
  double at(std::size_t r, std::size_t c) const;

  DenseMatrix to_dense() const;
  SparseMatrix select_rows(std::span<const std::size_t> rows) const;
  SparseMatrix transpose() const;

  /// Returns a copy with every nonzero row scaled to unit L2 norm.
  SparseMatrix normalized_rows() const;
  std::vector<double> row_norms() const;

  /// Throws std::logic_error if any CSR invariant is violated.
  void check_well_formed() const;

  bool operator==(const SparseMatrix&) const = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::uint32_t> col_indices_;
  std::vector<double> values_;
};

/// Fraction of zero cells, 1 - nnz / (rows * cols). Throws on a zero-size matrix.
double sparsity(const SparseMatrix& m);

/// y = A x (dense block), x is cols x b, result rows x b.
DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& x);
/// y = A^T x, x is rows x b, result cols x b.
DenseMatrix multiply_transposed(const SparseMatrix& a, const DenseMatrix& x);

/// Matrix Market coordinate I/O (real general, 1-based indices).
void write_matrix_market(const SparseMatrix& m, const std::string& path);
SparseMatrix read_matrix_market(const std::string& path);

}  // namespace fzdr
