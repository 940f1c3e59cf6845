#include "fzdr/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fzdr/errors.hpp"

namespace fzdr {

std::string_view to_string(WeightMethod m) {
  switch (m) {
    case WeightMethod::none: return "none";
    case WeightMethod::entropy: return "entropy";
    case WeightMethod::gfidf: return "gfidf";
    case WeightMethod::idf: return "idf";
    case WeightMethod::idf_df: return "idf_df";
    case WeightMethod::normal: return "normal";
    case WeightMethod::probidf: return "probidf";
  }
  return "unknown";
}

WeightMethod weight_method_from_string(std::string_view name) {
  for (auto m : {WeightMethod::none, WeightMethod::entropy, WeightMethod::gfidf, WeightMethod::idf,
                 WeightMethod::idf_df, WeightMethod::normal, WeightMethod::probidf})
    if (name == to_string(m)) return m;
  if (name == "gf-idf") return WeightMethod::gfidf;
  throw std::invalid_argument("unknown weighting '" + std::string(name) + "'");
}

namespace {

// Per-term column statistics in one pass over the CSR arrays.
struct TermStats {
  std::vector<double> global_freq;  // sum_j tf_ij
  std::vector<double> doc_freq;     // sum_j b(tf_ij)
  std::vector<double> sum_squares;  // sum_j tf_ij^2
};

TermStats term_stats(const SparseMatrix& dtm) {
  TermStats s{std::vector<double>(dtm.cols(), 0.0), std::vector<double>(dtm.cols(), 0.0),
              std::vector<double>(dtm.cols(), 0.0)};
  const auto& cols = dtm.col_indices();
  const auto& vals = dtm.values();
  for (std::size_t p = 0; p < vals.size(); ++p) {
    s.global_freq[cols[p]] += vals[p];
    s.doc_freq[cols[p]] += 1.0;
    s.sum_squares[cols[p]] += vals[p] * vals[p];
  }
  return s;
}

void require_documents(const SparseMatrix& dtm) {
  if (dtm.rows() == 0) throw std::invalid_argument("weighting: empty matrix");
}

}  // namespace

GlobalWeightVector entropy_weights(const SparseMatrix& dtm) {
  if (dtm.rows() < 2) throw std::invalid_argument("entropy undefined for single-document corpus");
  const auto stats = term_stats(dtm);
  std::vector<double> plogp(dtm.cols(), 0.0);
  const auto& cols = dtm.col_indices();
  const auto& vals = dtm.values();
  for (std::size_t p = 0; p < vals.size(); ++p) {
    const double pij = vals[p] / stats.global_freq[cols[p]];
    if (pij > 0.0) plogp[cols[p]] += pij * std::log2(pij);
  }
  const double log_n = std::log2(static_cast<double>(dtm.rows()));
  GlobalWeightVector gw{WeightMethod::entropy, std::vector<double>(dtm.cols(), 0.0)};
  for (std::size_t i = 0; i < dtm.cols(); ++i)
    if (stats.global_freq[i] > 0.0) gw.weights[i] = 1.0 + plogp[i] / log_n;
  return gw;
}

GlobalWeightVector gfidf_weights(const SparseMatrix& dtm) {
  require_documents(dtm);
  const auto stats = term_stats(dtm);
  GlobalWeightVector gw{WeightMethod::gfidf, std::vector<double>(dtm.cols(), 0.0)};
  for (std::size_t i = 0; i < dtm.cols(); ++i)
    if (stats.doc_freq[i] > 0.0) gw.weights[i] = stats.global_freq[i] / stats.doc_freq[i];
  return gw;
}

GlobalWeightVector idf_weights(const SparseMatrix& dtm, bool use_document_frequency) {
  require_documents(dtm);
  const auto stats = term_stats(dtm);
  const auto& denom = use_document_frequency ? stats.doc_freq : stats.global_freq;
  const double n = static_cast<double>(dtm.rows());
  GlobalWeightVector gw{use_document_frequency ? WeightMethod::idf_df : WeightMethod::idf,
                        std::vector<double>(dtm.cols(), 0.0)};
  for (std::size_t i = 0; i < dtm.cols(); ++i)
    if (denom[i] > 0.0) gw.weights[i] = std::log2(n / denom[i]);
  return gw;
}

GlobalWeightVector normal_weights(const SparseMatrix& dtm) {
  require_documents(dtm);
  const auto stats = term_stats(dtm);
  GlobalWeightVector gw{WeightMethod::normal, std::vector<double>(dtm.cols(), 0.0)};
  for (std::size_t i = 0; i < dtm.cols(); ++i)
    if (stats.sum_squares[i] > 0.0) gw.weights[i] = 1.0 / std::sqrt(stats.sum_squares[i]);
  return gw;
}

GlobalWeightVector probidf_weights(const SparseMatrix& dtm, double floor) {
  require_documents(dtm);
  const auto stats = term_stats(dtm);
  const double n = static_cast<double>(dtm.rows());
  GlobalWeightVector gw{WeightMethod::probidf, std::vector<double>(dtm.cols(), 0.0)};
  for (std::size_t i = 0; i < dtm.cols(); ++i) {
    const double df = stats.doc_freq[i];
    if (df == 0.0) continue;
    const double ratio = (n - df) / df;
    gw.weights[i] = ratio > 0.0 ? std::max(floor, std::log2(ratio)) : floor;
  }
  return gw;
}

GlobalWeightVector compute_weights(const SparseMatrix& dtm, WeightMethod method) {
  switch (method) {
    case WeightMethod::none: return {WeightMethod::none, std::vector<double>(dtm.cols(), 1.0)};
    case WeightMethod::entropy: return entropy_weights(dtm);
    case WeightMethod::gfidf: return gfidf_weights(dtm);
    case WeightMethod::idf: return idf_weights(dtm, false);
    case WeightMethod::idf_df: return idf_weights(dtm, true);
    case WeightMethod::normal: return normal_weights(dtm);
    case WeightMethod::probidf: return probidf_weights(dtm);
  }
  throw std::invalid_argument("compute_weights: unknown method");
}

SparseMatrix apply_weights(const SparseMatrix& dtm, const GlobalWeightVector& gw) {
  if (gw.weights.size() != dtm.cols())
    throw std::invalid_argument("apply_weights: weight vector length " + std::to_string(gw.weights.size()) +
                                " != " + std::to_string(dtm.cols()) + " columns");
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  cols.reserve(dtm.nnz());
  vals.reserve(dtm.nnz());
  for (std::size_t r = 0; r < dtm.rows(); ++r) {
    auto idx = dtm.row_indices(r);
    auto val = dtm.row_values(r);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const double v = val[p] * gw.weights[idx[p]];
      if (v != 0.0) {
        cols.push_back(idx[p]);
        vals.push_back(v);
      }
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(dtm.rows(), dtm.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

void write_weights_csv(const GlobalWeightVector& gw, const Vocabulary& vocab, const std::string& path) {
  if (gw.weights.size() != vocab.size()) throw std::invalid_argument("write_weights_csv: length mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  out << "term,method,weight\n";
  char buf[64];
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", gw.weights[i]);
    // The term is the only free-text field; the reader splits from the right.
    out << vocab.term(i) << ',' << to_string(gw.method) << ',' << buf << '\n';
  }
  if (!out) throw PathError("write failed: " + path);
}

GlobalWeightVector read_weights_csv(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != "term,method,weight") throw ParseError("expected header", 1);
  GlobalWeightVector gw;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c2 = line.rfind(',');
    const auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : line.rfind(',', c2 - 1);
    if (c1 == std::string::npos) throw ParseError("expected 3 fields", lineno);
    const std::string term = line.substr(0, c1);
    const std::size_t i = gw.weights.size();
    if (i >= vocab.size() || vocab.term(i) != term) throw ParseError("term does not match vocabulary", lineno);
    WeightMethod m;
    try {
      m = weight_method_from_string(line.substr(c1 + 1, c2 - c1 - 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
    if (first) gw.method = m;
    first = false;
    char* end = nullptr;
    const std::string num = line.substr(c2 + 1);
    const double w = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0' || !std::isfinite(w)) throw ParseError("bad weight", lineno);
    gw.weights.push_back(w);
  }
  if (gw.weights.size() != vocab.size()) throw ParseError("weights file shorter than vocabulary", lineno);
  return gw;
}

}  // namespace fzdr
