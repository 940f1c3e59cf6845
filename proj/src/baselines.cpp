#include "fzdr/baselines.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace fzdr {

namespace {

using ColMatrix = Eigen::MatrixXd;

// A (possibly implicitly centered) sparse matrix seen through its products.
struct Operator {
  const SparseMatrix& a;
  const Eigen::RowVectorXd* means = nullptr;  // column means when centered

  std::size_t rows() const { return a.rows(); }
  std::size_t cols() const { return a.cols(); }

  // (A - 1 mu) X
  ColMatrix apply(const ColMatrix& x) const {
    ColMatrix y = multiply(a, x);
    if (means) y.rowwise() -= (*means) * x;
    return y;
  }
  // (A - 1 mu)^T Y
  ColMatrix apply_t(const ColMatrix& y) const {
    ColMatrix z = multiply_transposed(a, y);
    if (means) z -= means->transpose() * y.colwise().sum();
    return z;
  }
};

ColMatrix orthonormal_basis(const ColMatrix& y) {
  Eigen::HouseholderQR<ColMatrix> qr(y);
  return qr.householderQ() * ColMatrix::Identity(y.rows(), y.cols());
}

void fix_signs(ColMatrix& u, ColMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index at = 0;
    v.col(c).cwiseAbs().maxCoeff(&at);
    if (v(at, c) < 0.0) {
      v.col(c) *= -1.0;
      u.col(c) *= -1.0;
    }
  }
}

SvdResult svd_of(const Operator& op, std::size_t k, const SvdOptions& opts) {
  const std::size_t n = op.rows();
  const std::size_t m = op.cols();
  const std::size_t small = std::min(n, m);
  ColMatrix u, v;
  Eigen::VectorXd s;
  if (small <= opts.exact_threshold) {
    // Materialize the short side: at most exact_threshold dense columns.
    if (m <= n) {
      const ColMatrix dense = op.apply(ColMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
      Eigen::JacobiSVD<ColMatrix> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
      u = svd.matrixU();
      v = svd.matrixV();
      s = svd.singularValues();
    } else {
      const ColMatrix dense_t =
          op.apply_t(ColMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
      Eigen::JacobiSVD<ColMatrix> svd(dense_t, Eigen::ComputeThinU | Eigen::ComputeThinV);
      u = svd.matrixV();
      v = svd.matrixU();
      s = svd.singularValues();
    }
  } else {
    const std::size_t width = std::min(k + opts.oversample, small);
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss;
    ColMatrix omega(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(width));
    for (Eigen::Index c = 0; c < omega.cols(); ++c)
      for (Eigen::Index r = 0; r < omega.rows(); ++r) omega(r, c) = gauss(rng);
    ColMatrix q = orthonormal_basis(op.apply(omega));
    for (std::size_t i = 0; i < opts.power_iters; ++i) {
      const ColMatrix z = orthonormal_basis(op.apply_t(q));
      q = orthonormal_basis(op.apply(z));
    }
    // B = Q^T A, decomposed through its transpose (m x width).
    const ColMatrix bt = op.apply_t(q);
    Eigen::JacobiSVD<ColMatrix> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = q * svd.matrixV();
    v = svd.matrixU();
    s = svd.singularValues();
  }
  const auto kk = static_cast<Eigen::Index>(k);
  ColMatrix uk = u.leftCols(kk);
  ColMatrix vk = v.leftCols(kk);
  fix_signs(uk, vk);
  return {uk, s.head(kk), vk};
}

}  // namespace

SvdResult truncated_svd(const SparseMatrix& a, std::size_t k, const SvdOptions& opts) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw std::invalid_argument("truncated_svd: k = " + std::to_string(k) + " outside [1, min(n, m)]");
  return svd_of(Operator{a}, k, opts);
}

PcaResult pca_scores(const SparseMatrix& a, std::size_t k, const SvdOptions& opts) {
  if (a.rows() < 2) throw std::invalid_argument("pca: needs at least 2 rows");
  if (k < 1 || k > std::min(a.rows() - 1, a.cols()))
    throw std::invalid_argument("pca: k = " + std::to_string(k) + " outside [1, min(n - 1, m)]");
  Eigen::RowVectorXd means = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(a.cols()));
  const auto& cols = a.col_indices();
  const auto& vals = a.values();
  for (std::size_t p = 0; p < vals.size(); ++p) means[cols[p]] += vals[p];
  means /= static_cast<double>(a.rows());
  auto svd = svd_of(Operator{a, &means}, k, opts);
  return {svd.reduced(), std::move(svd.V), means.transpose(), std::move(svd.S)};
}

std::string_view to_string(ReduceMethod m) {
  switch (m) {
    case ReduceMethod::fc: return "fc";
    case ReduceMethod::svd: return "svd";
    case ReduceMethod::pca: return "pca";
  }
  return "unknown";
}

ReduceMethod reduce_method_from_string(std::string_view name) {
  if (name == "fc") return ReduceMethod::fc;
  if (name == "svd") return ReduceMethod::svd;
  if (name == "pca") return ReduceMethod::pca;
  throw std::invalid_argument("unknown reduction method '" + std::string(name) + "'");
}

Reduction fit_reduction(const SparseMatrix& dtm, ReduceMethod method, std::size_t k, const ReduceConfig& cfg) {
  switch (method) {
    case ReduceMethod::fc: {
      FuzzyConfig fc = cfg.fuzzy;
      fc.k = k;
      auto res = fit(dtm, fc);
      return {std::move(res.memberships),
              FuzzyModel{std::move(res.prototypes), fc.q, fc.seed, res.iterations_run, res.converged}};
    }
    case ReduceMethod::svd: {
      auto res = truncated_svd(dtm, k, cfg.svd);
      DenseMatrix rep = res.reduced();
      return {std::move(rep), SvdModel{std::move(res.V), std::move(res.S)}};
    }
    case ReduceMethod::pca: {
      auto res = pca_scores(dtm, k, cfg.svd);
      return {std::move(res.scores),
              PcaModel{std::move(res.loadings), std::move(res.column_means), std::move(res.singular_values)}};
    }
  }
  throw std::invalid_argument("fit_reduction: unknown method");
}

DenseMatrix reduce(const SparseMatrix& dtm, ReduceMethod method, std::size_t k, const ReduceConfig& cfg) {
  return fit_reduction(dtm, method, k, cfg).representation;
}

DenseMatrix apply_reduction(const ReductionModel& model, const SparseMatrix& rows, std::size_t threads) {
  return std::visit(
      [&](const auto& m) -> DenseMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FuzzyModel>) {
          return transform(rows, m.prototypes, m.q, threads);
        } else if constexpr (std::is_same_v<T, SvdModel>) {
          if (static_cast<std::size_t>(m.V.rows()) != rows.cols())
            throw std::invalid_argument("apply_reduction: width mismatch");
          return multiply(rows, m.V);
        } else {
          if (static_cast<std::size_t>(m.loadings.rows()) != rows.cols())
            throw std::invalid_argument("apply_reduction: width mismatch");
          DenseMatrix out = multiply(rows, m.loadings);
          out.rowwise() -= m.column_means.transpose() * m.loadings;
          return out;
        }
      },
      model);
}

}  // namespace fzdr
