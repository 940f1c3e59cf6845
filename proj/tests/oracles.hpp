#pragma once

// Independent reference implementations. Dense, loop-by-loop, no shared code
// with the library beyond the matrix types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fzdr/sparse_matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_rows(const fzdr::SparseMatrix& a) {
  Dense out(a.rows(), std::vector<double>(a.cols(), 0.0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto idx = a.row_indices(r);
    auto val = a.row_values(r);
    for (std::size_t i = 0; i < idx.size(); ++i) out[r][idx[i]] = val[i];
  }
  return out;
}

inline Dense to_rows(const fzdr::DenseMatrix& a) {
  Dense out(static_cast<std::size_t>(a.rows()), std::vector<double>(static_cast<std::size_t>(a.cols())));
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out[r][c] = a(r, c);
  return out;
}

// ---------------------------------------------------------------- generators

/// Random count DTM. Every row gets at least `min_terms` distinct terms.
inline fzdr::SparseMatrix random_dtm(std::mt19937_64& rng, std::size_t n, std::size_t m, double density,
                                     std::size_t min_terms = 1, int max_count = 4) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, max_count);
  std::vector<std::vector<fzdr::SparseEntry>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::uint32_t> cols(m);
    for (std::uint32_t c = 0; c < m; ++c) cols[c] = c;
    std::shuffle(cols.begin(), cols.end(), rng);
    for (std::size_t i = 0; i < m; ++i)
      if (i < min_terms || unit(rng) < density) rows[r].push_back({cols[i], static_cast<double>(count(rng))});
  }
  return fzdr::SparseMatrix::from_rows(m, rows);
}

/// Dense Gaussian-valued sparse matrix (signed values).
inline fzdr::SparseMatrix random_signed(std::mt19937_64& rng, std::size_t n, std::size_t m, double density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<fzdr::SparseEntry>> rows(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < m; ++c)
      if (unit(rng) < density) rows[r].push_back({c, gauss(rng)});
  return fzdr::SparseMatrix::from_rows(m, rows);
}

// ------------------------------------------------------------------ weights

inline std::vector<double> entropy(const Dense& a) {
  const std::size_t n = a.size(), m = a[0].size();
  std::vector<double> w(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double gf = 0.0;
    for (std::size_t j = 0; j < n; ++j) gf += a[j][i];
    if (gf == 0.0) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = a[j][i] / gf;
      if (p > 0.0) s += p * std::log2(p);
    }
    w[i] = 1.0 + s / std::log2(static_cast<double>(n));
  }
  return w;
}

inline std::vector<double> gfidf(const Dense& a) {
  std::vector<double> w(a[0].size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    double gf = 0.0, df = 0.0;
    for (const auto& row : a) {
      gf += row[i];
      df += row[i] != 0.0;
    }
    w[i] = df > 0.0 ? gf / df : 0.0;
  }
  return w;
}

/// log2(n / gf) as printed; `by_df` uses document frequency instead.
inline std::vector<double> idf(const Dense& a, bool by_df) {
  std::vector<double> w(a[0].size(), 0.0);
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double gf = 0.0, df = 0.0;
    for (const auto& row : a) {
      gf += row[i];
      df += row[i] != 0.0;
    }
    const double denom = by_df ? df : gf;
    w[i] = denom > 0.0 ? std::log2(n / denom) : 0.0;
  }
  return w;
}

inline std::vector<double> normal(const Dense& a) {
  std::vector<double> w(a[0].size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    double ss = 0.0;
    for (const auto& row : a) ss += row[i] * row[i];
    w[i] = ss > 0.0 ? 1.0 / std::sqrt(ss) : 0.0;
  }
  return w;
}

// ------------------------------------------------------------------- fuzzy

inline std::vector<double> unit(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
  return v;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// D[j][f] = 1 - cos(doc j, prototype f); zero documents get 1.
inline Dense dissimilarities(const Dense& docs, const Dense& protos) {
  Dense d(docs.size(), std::vector<double>(protos.size()));
  for (std::size_t j = 0; j < docs.size(); ++j) {
    const auto x = unit(docs[j]);
    for (std::size_t f = 0; f < protos.size(); ++f) d[j][f] = std::max(0.0, 1.0 - dot(x, unit(protos[f])));
  }
  return d;
}

/// Textbook form: mu = 1 / sum_g (D_f / D_g)^(1/(q-1)); ties at zero share evenly.
inline Dense memberships(const Dense& d, double q) {
  Dense u(d.size(), std::vector<double>(d[0].size()));
  for (std::size_t j = 0; j < d.size(); ++j) {
    std::size_t zeros = 0;
    for (double x : d[j]) zeros += x == 0.0;
    for (std::size_t f = 0; f < d[j].size(); ++f) {
      if (zeros) {
        u[j][f] = d[j][f] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
        continue;
      }
      double s = 0.0;
      for (std::size_t g = 0; g < d[j].size(); ++g) s += std::pow(d[j][f] / d[j][g], 1.0 / (q - 1.0));
      u[j][f] = 1.0 / s;
    }
  }
  return u;
}

/// v_f = normalize(sum_j mu_jf^q x_j / |x_j|).
inline Dense prototypes(const Dense& docs, const Dense& u, double q) {
  const std::size_t k = u[0].size(), m = docs[0].size();
  Dense v(k, std::vector<double>(m, 0.0));
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      const auto x = unit(docs[j]);
      const double w = std::pow(u[j][f], q);
      for (std::size_t i = 0; i < m; ++i) v[f][i] += w * x[i];
    }
    v[f] = unit(v[f]);
  }
  return v;
}

/// sum_j sum_f mu_jf^q (1 - cos(x_j, v_f)).
inline double spherical_objective(const Dense& docs, const Dense& u, const Dense& protos, double q) {
  const auto d = dissimilarities(docs, protos);
  double s = 0.0;
  for (std::size_t j = 0; j < docs.size(); ++j)
    for (std::size_t f = 0; f < protos.size(); ++f) s += std::pow(u[j][f], q) * d[j][f];
  return s;
}

// --------------------------------------------------------- eigen / svd / pca

struct Eig {
  std::vector<double> values;  // descending
  Dense vectors;               // vectors[i] is the eigenvector of values[i]
};

/// Cyclic Jacobi rotations on a symmetric matrix.
inline Eig jacobi(Dense a) {
  const std::size_t n = a.size();
  Dense v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += a[p][r] * a[p][r];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        if (a[p][r] == 0.0) continue;
        const double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i][p], air = a[i][r];
          a[i][p] = c * aip - s * air;
          a[i][r] = s * aip + c * air;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p][i], ari = a[r][i];
          a[p][i] = c * api - s * ari;
          a[r][i] = s * api + c * ari;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v[i][p], vir = v[i][r];
          v[i][p] = c * vip - s * vir;
          v[i][r] = s * vip + c * vir;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  Eig out;
  for (auto i : order) {
    out.values.push_back(a[i][i]);
    std::vector<double> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v[r][i];
    out.vectors.push_back(col);
  }
  return out;
}

/// Gram matrix X^T X of the (optionally column-centered) rows.
inline Dense gram(const Dense& x, bool center) {
  const std::size_t n = x.size(), m = x[0].size();
  std::vector<double> mean(m, 0.0);
  if (center)
    for (const auto& row : x)
      for (std::size_t i = 0; i < m; ++i) mean[i] += row[i] / static_cast<double>(n);
  Dense g(m, std::vector<double>(m, 0.0));
  for (const auto& row : x)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) g[a][b] += (row[a] - mean[a]) * (row[b] - mean[b]);
  return g;
}

inline std::vector<double> singular_values(const Dense& x) {
  auto e = jacobi(gram(x, false));
  std::vector<double> s;
  for (double v : e.values) s.push_back(std::sqrt(std::max(0.0, v)));
  return s;
}

/// Scores of the top-k principal axes of the covariance eigendecomposition.
inline Dense pca_scores(const Dense& x, std::size_t k) {
  const std::size_t n = x.size(), m = x[0].size();
  std::vector<double> mean(m, 0.0);
  for (const auto& row : x)
    for (std::size_t i = 0; i < m; ++i) mean[i] += row[i] / static_cast<double>(n);
  const auto e = jacobi(gram(x, true));
  Dense scores(n, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < m; ++i) scores[j][c] += (x[j][i] - mean[i]) * e.vectors[c][i];
  return scores;
}

// ----------------------------------------------------------------- classify

/// Accuracy = (tp + tn) / (tp + tn + fp + fn).
inline double accuracy(double tp, double tn, double fp, double fn) { return (tp + tn) / (tp + tn + fp + fn); }

}  // namespace oracle
