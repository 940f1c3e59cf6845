#include "fzdr/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fzdr {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
                           std::vector<std::uint32_t> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  check_well_formed();
}

void SparseMatrix::check_well_formed() const {
  if (n_cols_ > std::numeric_limits<std::uint32_t>::max())
    throw std::logic_error("csr: too many columns");
  if (row_offsets_.size() != n_rows_ + 1) throw std::logic_error("csr: row_offsets length != n_rows + 1");
  if (row_offsets_.front() != 0) throw std::logic_error("csr: row_offsets must start at 0");
  if (col_indices_.size() != values_.size()) throw std::logic_error("csr: index/value length mismatch");
  if (row_offsets_.back() != values_.size()) throw std::logic_error("csr: row_offsets must end at nnz");
  for (std::size_t r = 0; r < n_rows_; ++r) {
    if (row_offsets_[r] > row_offsets_[r + 1]) throw std::logic_error("csr: row_offsets not monotone");
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      if (col_indices_[p] >= n_cols_) throw std::logic_error("csr: column index out of range");
      if (p > row_offsets_[r] && col_indices_[p] <= col_indices_[p - 1])
        throw std::logic_error("csr: column indices not strictly increasing");
      if (values_[p] == 0.0) throw std::logic_error("csr: explicit zero stored");
      if (!std::isfinite(values_[p])) throw std::logic_error("csr: non-finite value");
    }
  }
}

SparseMatrix SparseMatrix::from_rows(std::size_t n_cols, const std::vector<std::vector<SparseEntry>>& rows) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<SparseEntry> row;
  for (const auto& input : rows) {
    row = input;
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    for (std::size_t i = 0; i < row.size();) {
      std::size_t j = i;
      double sum = 0.0;
      while (j < row.size() && row[j].col == row[i].col) sum += row[j++].value;
      if (sum != 0.0) {
        cols.push_back(row[i].col);
        vals.push_back(sum);
      }
      i = j;
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(rows.size(), n_cols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != 0.0) {
        cols.push_back(static_cast<std::uint32_t>(c));
        vals.push_back(dense(r, c));
      }
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(static_cast<std::size_t>(dense.rows()), static_cast<std::size_t>(dense.cols()),
                      std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto idx = row_indices(r);
  auto it = std::lower_bound(idx.begin(), idx.end(), static_cast<std::uint32_t>(c));
  if (it == idx.end() || *it != c) return 0.0;
  return row_values(r)[static_cast<std::size_t>(it - idx.begin())];
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(n_rows_), static_cast<Eigen::Index>(n_cols_));
  for (std::size_t r = 0; r < n_rows_; ++r) {
    auto idx = row_indices(r);
    auto val = row_values(r);
    for (std::size_t p = 0; p < idx.size(); ++p) out(static_cast<Eigen::Index>(r), idx[p]) = val[p];
  }
  return out;
}

SparseMatrix SparseMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  for (auto r : rows) {
    if (r >= n_rows_) throw std::out_of_range("select_rows: row index out of range");
    auto idx = row_indices(r);
    auto val = row_values(r);
    cols.insert(cols.end(), idx.begin(), idx.end());
    vals.insert(vals.end(), val.begin(), val.end());
    offsets.push_back(vals.size());
  }
  return SparseMatrix(rows.size(), n_cols_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> offsets(n_cols_ + 1, 0);
  for (auto c : col_indices_) ++offsets[c + 1];
  for (std::size_t c = 0; c < n_cols_; ++c) offsets[c + 1] += offsets[c];
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<std::uint32_t> cols(nnz());
  std::vector<double> vals(nnz());
  for (std::size_t r = 0; r < n_rows_; ++r) {
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      const std::size_t dst = cursor[col_indices_[p]]++;
      cols[dst] = static_cast<std::uint32_t>(r);
      vals[dst] = values_[p];
    }
  }
  return SparseMatrix(n_cols_, n_rows_, std::move(offsets), std::move(cols), std::move(vals));
}

std::vector<double> SparseMatrix::row_norms() const {
  std::vector<double> norms(n_rows_, 0.0);
  for (std::size_t r = 0; r < n_rows_; ++r) {
    double s = 0.0;
    for (double v : row_values(r)) s += v * v;
    norms[r] = std::sqrt(s);
  }
  return norms;
}

SparseMatrix SparseMatrix::normalized_rows() const {
  SparseMatrix out = *this;
  const auto norms = row_norms();
  for (std::size_t r = 0; r < n_rows_; ++r) {
    if (norms[r] == 0.0) continue;
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) out.values_[p] = values_[p] / norms[r];
  }
  return out;
}

double sparsity(const SparseMatrix& m) {
  const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (cells == 0.0) throw std::invalid_argument("sparsity: zero-size matrix");
  return 1.0 - static_cast<double>(m.nnz()) / cells;
}

DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& x) {
  if (static_cast<std::size_t>(x.rows()) != a.cols()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix y = DenseMatrix::Zero(static_cast<Eigen::Index>(a.rows()), x.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto idx = a.row_indices(r);
    auto val = a.row_values(r);
    auto out = y.row(static_cast<Eigen::Index>(r));
    for (std::size_t p = 0; p < idx.size(); ++p) out.noalias() += val[p] * x.row(idx[p]);
  }
  return y;
}

DenseMatrix multiply_transposed(const SparseMatrix& a, const DenseMatrix& x) {
  if (static_cast<std::size_t>(x.rows()) != a.rows())
    throw std::invalid_argument("multiply_transposed: shape mismatch");
  DenseMatrix y = DenseMatrix::Zero(static_cast<Eigen::Index>(a.cols()), x.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto idx = a.row_indices(r);
    auto val = a.row_values(r);
    auto in = x.row(static_cast<Eigen::Index>(r));
    for (std::size_t p = 0; p < idx.size(); ++p) y.row(idx[p]).noalias() += val[p] * in;
  }
  return y;
}

}  // namespace fzdr
