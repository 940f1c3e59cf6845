#include "fzdr/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "fzdr/parallel.hpp"

namespace fzdr {

void FuzzyConfig::validate() const {
  if (k < 2) throw std::invalid_argument("fuzzy: k must be >= 2");
  if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("fuzzy: fuzzifier q must be > 1");
  if (max_iterations < 1) throw std::invalid_argument("fuzzy: max_iterations must be >= 1");
  if (!(min_improvement > 0.0)) throw std::invalid_argument("fuzzy: min_improvement must be > 0");
}

namespace {

double dot_dense(std::span<const std::uint32_t> idx, std::span<const double> val, const Eigen::VectorXd& dense) {
  double s = 0.0;
  for (std::size_t p = 0; p < idx.size(); ++p) s += val[p] * dense[idx[p]];
  return s;
}

Eigen::VectorXd densify_row(const SparseMatrix& m, std::size_t r) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.cols()));
  auto idx = m.row_indices(r);
  auto val = m.row_values(r);
  for (std::size_t p = 0; p < idx.size(); ++p) v[idx[p]] = val[p];
  return v;
}

// k-means++ style seeding with D = 1 - cos as the sampling weight.
std::vector<std::size_t> seed_kmeanspp(const SparseMatrix& x, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  std::size_t next = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (;;) {
    chosen.push_back(next);
    taken[next] = true;
    if (chosen.size() == k) break;
    const Eigen::VectorXd center = densify_row(x, next);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::max(0.0, 1.0 - dot_dense(x.row_indices(j), x.row_values(j), center));
      min_dist[j] = std::min(min_dist[j], d);
      if (!taken[j]) total += min_dist[j];
    }
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      next = n;
      std::size_t last_free = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        last_free = j;
        target -= min_dist[j];
        if (target < 0.0 && min_dist[j] > 0.0) {
          next = j;
          break;
        }
      }
      if (next == n) next = last_free;
    } else {
      std::vector<std::size_t> free;
      for (std::size_t j = 0; j < n; ++j)
        if (!taken[j]) free.push_back(j);
      next = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    }
  }
  return chosen;
}

std::vector<std::size_t> seed_random(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  return perm;
}

double criterion(const DenseMatrix& memberships, const DenseMatrix& dissimilarities, double q) {
  double j = 0.0;
  for (Eigen::Index r = 0; r < memberships.rows(); ++r)
    for (Eigen::Index f = 0; f < memberships.cols(); ++f)
      j += std::pow(memberships(r, f), q) * dissimilarities(r, f);
  return j;
}

}  // namespace

DenseMatrix cosine_dissimilarities(const SparseMatrix& normalized, const DenseMatrix& prototypes,
                                   std::size_t threads) {
  if (static_cast<std::size_t>(prototypes.cols()) != normalized.cols())
    throw std::invalid_argument("prototype width " + std::to_string(prototypes.cols()) +
                                " does not match matrix width " + std::to_string(normalized.cols()));
  const Eigen::Index k = prototypes.rows();
  // m x k so the k prototype coordinates of one term are contiguous.
  const DenseMatrix by_term = prototypes.transpose();
  DenseMatrix d(static_cast<Eigen::Index>(normalized.rows()), k);
  parallel_for(normalized.rows(), threads, [&](std::size_t begin, std::size_t end) {
    Eigen::RowVectorXd cos(k);
    for (std::size_t r = begin; r < end; ++r) {
      cos.setZero();
      auto idx = normalized.row_indices(r);
      auto val = normalized.row_values(r);
      for (std::size_t p = 0; p < idx.size(); ++p) cos.noalias() += val[p] * by_term.row(idx[p]);
      for (Eigen::Index f = 0; f < k; ++f) d(static_cast<Eigen::Index>(r), f) = std::max(0.0, 1.0 - cos[f]);
    }
  });
  return d;
}

DenseMatrix update_memberships(const DenseMatrix& dissimilarities, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("update_memberships: q must be > 1");
  const double exponent = 1.0 / (q - 1.0);
  const Eigen::Index k = dissimilarities.cols();
  DenseMatrix mu(dissimilarities.rows(), k);
  Eigen::RowVectorXd logw(k);
  for (Eigen::Index r = 0; r < dissimilarities.rows(); ++r) {
    Eigen::Index zeros = 0;
    for (Eigen::Index f = 0; f < k; ++f) zeros += dissimilarities(r, f) <= 0.0;
    if (zeros > 0) {
      for (Eigen::Index f = 0; f < k; ++f)
        mu(r, f) = dissimilarities(r, f) <= 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
      continue;
    }
    // mu_f is proportional to D_f^(-1/(q-1)); work in logs so small q does not overflow.
    for (Eigen::Index f = 0; f < k; ++f) logw[f] = -exponent * std::log(dissimilarities(r, f));
    const double top = logw.maxCoeff();
    double total = 0.0;
    for (Eigen::Index f = 0; f < k; ++f) {
      logw[f] = std::exp(logw[f] - top);
      total += logw[f];
    }
    mu.row(r) = logw / total;
  }
  return mu;
}

PrototypeUpdate update_prototypes(const SparseMatrix& normalized, const DenseMatrix& memberships, double q,
                                  std::size_t threads) {
  if (static_cast<std::size_t>(memberships.rows()) != normalized.rows())
    throw std::invalid_argument("update_prototypes: membership rows do not match matrix rows");
  const Eigen::Index k = memberships.cols();
  const auto m = static_cast<Eigen::Index>(normalized.cols());
  const DenseMatrix weight = memberships.array().pow(q).matrix();
  DenseMatrix acc = DenseMatrix::Zero(m, k);

  // Each worker owns a range of clusters and walks every row in order, so
  // the summation order per entry is independent of the thread count.
  parallel_for(static_cast<std::size_t>(k), threads, [&](std::size_t f0, std::size_t f1) {
    const auto lo = static_cast<Eigen::Index>(f0);
    const auto width = static_cast<Eigen::Index>(f1 - f0);
    for (std::size_t r = 0; r < normalized.rows(); ++r) {
      auto idx = normalized.row_indices(r);
      auto val = normalized.row_values(r);
      const auto w = weight.row(static_cast<Eigen::Index>(r)).segment(lo, width);
      for (std::size_t p = 0; p < idx.size(); ++p) acc.row(idx[p]).segment(lo, width).noalias() += val[p] * w;
    }
  });

  PrototypeUpdate out{DenseMatrix::Zero(k, m), {}};
  for (Eigen::Index f = 0; f < k; ++f) {
    const double norm = acc.col(f).norm();
    if (norm > 0.0 && std::isfinite(norm) && weight.col(f).sum() > 0.0) {
      out.prototypes.row(f) = acc.col(f).transpose() / norm;
    } else {
      out.reseeded.push_back(static_cast<std::size_t>(f));
    }
  }
  if (out.reseeded.empty()) return out;

  // Reseed each dead cluster from the document least similar to its best
  // live prototype.
  std::vector<bool> alive(static_cast<std::size_t>(k), true);
  for (auto f : out.reseeded) alive[f] = false;
  std::vector<double> best(normalized.rows(), -std::numeric_limits<double>::infinity());
  for (Eigen::Index f = 0; f < k; ++f) {
    if (!alive[static_cast<std::size_t>(f)]) continue;
    const Eigen::VectorXd v = out.prototypes.row(f).transpose();
    for (std::size_t r = 0; r < normalized.rows(); ++r)
      best[r] = std::max(best[r], dot_dense(normalized.row_indices(r), normalized.row_values(r), v));
  }
  std::vector<bool> used(normalized.rows(), false);
  for (auto f : out.reseeded) {
    std::size_t pick = normalized.rows();
    for (std::size_t r = 0; r < normalized.rows(); ++r) {
      if (used[r] || normalized.row_indices(r).empty()) continue;
      if (pick == normalized.rows() || best[r] < best[pick]) pick = r;
    }
    if (pick == normalized.rows()) throw std::runtime_error("update_prototypes: no document left to reseed from");
    used[pick] = true;
    const Eigen::VectorXd d = densify_row(normalized, pick);
    out.prototypes.row(static_cast<Eigen::Index>(f)) = d.transpose() / d.norm();
  }
  return out;
}

double objective(const SparseMatrix& normalized, const DenseMatrix& memberships, const DenseMatrix& prototypes,
                 double q) {
  const DenseMatrix dots = multiply(normalized, prototypes.transpose());
  const auto sq = normalized.row_norms();
  double j = 0.0;
  for (Eigen::Index r = 0; r < memberships.rows(); ++r) {
    const double dd = sq[static_cast<std::size_t>(r)] * sq[static_cast<std::size_t>(r)];
    for (Eigen::Index f = 0; f < memberships.cols(); ++f) {
      const double dist = dd - 2.0 * dots(r, f) + prototypes.row(f).squaredNorm();
      j += std::pow(memberships(r, f), q) * dist;
    }
  }
  return j;
}

double spherical_objective(const SparseMatrix& normalized, const DenseMatrix& memberships,
                           const DenseMatrix& prototypes, double q) {
  return criterion(memberships, cosine_dissimilarities(normalized, prototypes), q);
}

FitResult fit(const SparseMatrix& dtm, const FuzzyConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> usable;
  for (std::size_t r = 0; r < dtm.rows(); ++r)
    if (!dtm.row_indices(r).empty()) usable.push_back(r);
  if (usable.empty()) throw std::invalid_argument("fuzzy: all-zero document-term matrix");
  if (cfg.k > usable.size())
    throw std::invalid_argument("fuzzy: k = " + std::to_string(cfg.k) + " exceeds the " +
                                std::to_string(usable.size()) + " non-empty documents");
  const SparseMatrix x = dtm.select_rows(usable).normalized_rows();
  std::mt19937_64 rng(cfg.seed);
  const auto seeds = cfg.init == FuzzyInit::kmeanspp_cosine ? seed_kmeanspp(x, cfg.k, rng)
                                                            : seed_random(x.rows(), cfg.k, rng);
  DenseMatrix seed_rows(static_cast<Eigen::Index>(cfg.k), static_cast<Eigen::Index>(dtm.cols()));
  for (std::size_t f = 0; f < cfg.k; ++f)
    seed_rows.row(static_cast<Eigen::Index>(f)) = densify_row(x, seeds[f]).transpose();
  // Start from the normalized means of the nearest-seed partition rather
  // than the seed documents themselves: a prototype sitting exactly on a
  // document pins that document to a crisp membership for every q.
  const DenseMatrix d = cosine_dissimilarities(x, seed_rows, cfg.threads);
  const auto k = static_cast<Eigen::Index>(cfg.k);
  std::vector<Eigen::Index> group(x.rows());
  std::vector<std::size_t> group_size(cfg.k, 0);
  std::vector<bool> is_seed(x.rows(), false);
  for (std::size_t f = 0; f < cfg.k; ++f) {
    group[seeds[f]] = static_cast<Eigen::Index>(f);
    is_seed[seeds[f]] = true;
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (!is_seed[r]) d.row(static_cast<Eigen::Index>(r)).minCoeff(&group[r]);
    ++group_size[static_cast<std::size_t>(group[r])];
  }
  // Singleton groups would reproduce the seed exactly, so each one borrows
  // the closest non-seed document from a group that can spare it.
  for (Eigen::Index f = 0; f < k; ++f) {
    if (group_size[static_cast<std::size_t>(f)] != 1) continue;
    std::size_t pick = x.rows();
    for (std::size_t r = 0; r < x.rows(); ++r) {
      if (is_seed[r] || group_size[static_cast<std::size_t>(group[r])] <= 2) continue;
      if (pick == x.rows() || d(static_cast<Eigen::Index>(r), f) < d(static_cast<Eigen::Index>(pick), f)) pick = r;
    }
    if (pick == x.rows()) continue;
    --group_size[static_cast<std::size_t>(group[pick])];
    group[pick] = f;
    ++group_size[static_cast<std::size_t>(f)];
  }
  DenseMatrix crisp = DenseMatrix::Zero(d.rows(), k);
  for (std::size_t r = 0; r < x.rows(); ++r) crisp(static_cast<Eigen::Index>(r), group[r]) = 1.0;
  return fit(dtm, cfg, update_prototypes(x, crisp, 1.0, cfg.threads).prototypes);
}

FitResult fit(const SparseMatrix& dtm, const FuzzyConfig& cfg, const DenseMatrix& initial_prototypes) {
  cfg.validate();
  if (static_cast<std::size_t>(initial_prototypes.rows()) != cfg.k ||
      static_cast<std::size_t>(initial_prototypes.cols()) != dtm.cols())
    throw std::invalid_argument("fuzzy: initial prototypes must be k x m");
  std::vector<std::size_t> usable;
  for (std::size_t r = 0; r < dtm.rows(); ++r)
    if (!dtm.row_indices(r).empty()) usable.push_back(r);
  if (usable.empty()) throw std::invalid_argument("fuzzy: all-zero document-term matrix");
  if (cfg.k > usable.size())
    throw std::invalid_argument("fuzzy: k = " + std::to_string(cfg.k) + " exceeds the " +
                                std::to_string(usable.size()) + " non-empty documents");
  const SparseMatrix x = dtm.select_rows(usable).normalized_rows();

  FitResult res;
  res.prototypes = initial_prototypes;
  for (Eigen::Index f = 0; f < res.prototypes.rows(); ++f) {
    const double norm = res.prototypes.row(f).norm();
    if (!(norm > 0.0)) throw std::invalid_argument("fuzzy: zero initial prototype");
    res.prototypes.row(f) /= norm;
  }

  DenseMatrix d = cosine_dissimilarities(x, res.prototypes, cfg.threads);
  DenseMatrix mu = update_memberships(d, cfg.q);
  double previous = criterion(mu, d, cfg.q);
  res.objective_trace.push_back(previous);

  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    auto update = update_prototypes(x, mu, cfg.q, cfg.threads);
    res.prototypes = std::move(update.prototypes);
    res.reseeded_clusters += update.reseeded.size();
    d = cosine_dissimilarities(x, res.prototypes, cfg.threads);
    mu = update_memberships(d, cfg.q);
    const double current = criterion(mu, d, cfg.q);
    res.objective_trace.push_back(current);
    res.iterations_run = it;
    if (previous <= 0.0 || previous - current < cfg.min_improvement * previous) {
      res.converged = true;
      break;
    }
    previous = current;
  }

  const auto k = static_cast<Eigen::Index>(cfg.k);
  res.memberships = DenseMatrix::Constant(static_cast<Eigen::Index>(dtm.rows()), k, 1.0 / static_cast<double>(k));
  for (std::size_t i = 0; i < usable.size(); ++i)
    res.memberships.row(static_cast<Eigen::Index>(usable[i])) = mu.row(static_cast<Eigen::Index>(i));
  return res;
}

DenseMatrix transform(const SparseMatrix& new_dtm, const DenseMatrix& prototypes, double q, std::size_t threads) {
  if (static_cast<std::size_t>(prototypes.cols()) != new_dtm.cols())
    throw std::invalid_argument("transform: matrix has " + std::to_string(new_dtm.cols()) +
                                " columns, prototypes have " + std::to_string(prototypes.cols()));
  return update_memberships(cosine_dissimilarities(new_dtm.normalized_rows(), prototypes, threads), q);
}

}  // namespace fzdr
