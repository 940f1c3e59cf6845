#include "fzdr/evalharness.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fzdr/errors.hpp"
#include "fzdr/parallel.hpp"
#include "fzdr/synthetic.hpp"

namespace fzdr {

std::vector<std::size_t> stratified_kfold(const std::vector<int>& labels, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_kfold: folds must be >= 2");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& [label, members] : by_class)
    if (members.size() < folds)
      throw std::invalid_argument("stratified_kfold: class " + std::to_string(label) + " has " +
                                  std::to_string(members.size()) + " members, fewer than " + std::to_string(folds) +
                                  " folds");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(labels.size(), 0);
  std::size_t deal = 0;
  for (auto& [label, members] : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (auto i : members) fold_of[i] = deal++ % folds;
  }
  return fold_of;
}

// ------------------------------------------------------------------ plan

void ExperimentPlan::validate() const {
  if (folds < 2) throw std::invalid_argument("plan: folds must be >= 2");
  if (dimensions.empty()) throw std::invalid_argument("plan: no dimensions");
  for (auto d : dimensions)
    if (d < 2) throw std::invalid_argument("plan: every dimension must be >= 2");
  if (methods.empty()) throw std::invalid_argument("plan: no methods");
  if (std::find(methods.begin(), methods.end(), ReduceMethod::fc) != methods.end() && fuzzifiers.empty())
    throw std::invalid_argument("plan: fc requested without fuzzifiers");
  for (auto q : fuzzifiers)
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("plan: fuzzifiers must be > 1");
  if (weightings.empty()) throw std::invalid_argument("plan: no weightings");
  if (classifiers.empty()) throw std::invalid_argument("plan: no classifiers");
  if (fc_max_iterations < 1) throw std::invalid_argument("plan: fc_max_iterations must be >= 1");
  if (!(fc_min_improvement > 0.0)) throw std::invalid_argument("plan: fc_min_improvement must be > 0");
  if (adaboost_rounds < 1) throw std::invalid_argument("plan: adaboost_rounds must be >= 1");
  if (rf_trees < 1 || rf_max_depth < 1) throw std::invalid_argument("plan: rf_trees and rf_max_depth must be >= 1");
  if (threads < 1) throw std::invalid_argument("plan: threads must be >= 1");
  tokenizer.validate();
}

ExperimentPlan ExperimentPlan::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("plan: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("plan: top level must be an object");
  ExperimentPlan plan;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const auto& v = it.value();
      if (key == "corpus" || key == "corpus_path") {
        plan.corpus_path = v.get<std::string>();
      } else if (key == "dimensions") {
        plan.dimensions = v.get<std::vector<std::size_t>>();
      } else if (key == "methods") {
        plan.methods.clear();
        for (const auto& m : v) plan.methods.push_back(reduce_method_from_string(m.get<std::string>()));
      } else if (key == "fuzzifiers") {
        plan.fuzzifiers = v.get<std::vector<double>>();
      } else if (key == "weightings") {
        plan.weightings.clear();
        for (const auto& w : v) plan.weightings.push_back(weight_method_from_string(w.get<std::string>()));
      } else if (key == "folds") {
        plan.folds = v.get<std::size_t>();
      } else if (key == "classifiers") {
        plan.classifiers.clear();
        for (const auto& c : v) plan.classifiers.push_back(classifier_from_string(c.get<std::string>()));
      } else if (key == "master_seed") {
        plan.master_seed = v.get<std::uint64_t>();
      } else if (key == "reduce_whole_corpus") {
        plan.reduce_whole_corpus = v.get<bool>();
      } else if (key == "positive_label") {
        plan.positive_label = v.get<std::string>();
      } else if (key == "fc_max_iterations") {
        plan.fc_max_iterations = v.get<std::size_t>();
      } else if (key == "fc_min_improvement") {
        plan.fc_min_improvement = v.get<double>();
      } else if (key == "adaboost_rounds") {
        plan.adaboost_rounds = v.get<std::size_t>();
      } else if (key == "rf_trees") {
        plan.rf_trees = v.get<std::size_t>();
      } else if (key == "rf_max_depth") {
        plan.rf_max_depth = v.get<std::size_t>();
      } else if (key == "threads") {
        plan.threads = v.get<std::size_t>();
      } else if (key == "tokenizer") {
        for (auto t = v.begin(); t != v.end(); ++t) {
          if (t.key() == "lowercase") plan.tokenizer.lowercase = t->get<bool>();
          else if (t.key() == "min_token_length") plan.tokenizer.min_token_length = t->get<std::size_t>();
          else if (t.key() == "strip_non_alphanumeric") plan.tokenizer.strip_non_alphanumeric = t->get<bool>();
          else if (t.key() == "min_document_frequency") plan.tokenizer.min_document_frequency = t->get<std::size_t>();
          else if (t.key() == "stopwords") plan.tokenizer.stopwords = t->get<std::set<std::string>>();
          else throw std::invalid_argument("plan: unknown tokenizer key '" + t.key() + "'");
        }
      } else {
        throw std::invalid_argument("plan: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan: wrong value type: ") + e.what());
  }
  plan.validate();
  return plan;
}

ExperimentPlan ExperimentPlan::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto plan = from_json_text(ss.str());
  // A relative corpus path is taken relative to the plan file.
  if (!plan.corpus_path.empty() && std::filesystem::path(plan.corpus_path).is_relative())
    plan.corpus_path = (std::filesystem::path(path).parent_path() / plan.corpus_path).string();
  return plan;
}

// ------------------------------------------------------------ aggregation

namespace {

std::string format_fuzzifier(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

struct CellKey {
  ReduceMethod method;
  std::optional<double> fuzzifier;
  WeightMethod weighting;
  std::size_t dimension;
  bool operator==(const CellKey&) const = default;
};

CellKey key_of(const ResultRow& r) { return {r.method, r.fuzzifier, r.weighting, r.dimension}; }

}  // namespace

std::string series_label(ReduceMethod method, std::optional<double> fuzzifier) {
  switch (method) {
    case ReduceMethod::fc: return "FC-" + format_fuzzifier(fuzzifier.value_or(2.0));
    case ReduceMethod::pca: return "PCA";
    case ReduceMethod::svd: return "SVD";
  }
  return "?";
}

std::vector<Aggregate> ExperimentResult::aggregates() const {
  std::vector<CellKey> keys;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    const auto k = key_of(r);
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      keys.push_back(k);
      values.emplace_back();
      it = keys.end() - 1;
    }
    values[static_cast<std::size_t>(it - keys.begin())].push_back(r.accuracy);
  }
  std::vector<Aggregate> out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& v = values[i];
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    out.push_back({keys[i].method, keys[i].fuzzifier, keys[i].weighting, keys[i].dimension, v.size(), mean, sd});
  }
  return out;
}

// -------------------------------------------------------------- the grid

namespace {

std::vector<int> binarize(const std::vector<Document>& corpus, const std::optional<std::string>& positive) {
  std::set<std::string> distinct;
  for (const auto& d : corpus) distinct.insert(d.label);
  std::string pos_label;
  if (positive) {
    if (!distinct.count(*positive)) throw std::invalid_argument("positive label '" + *positive + "' not in corpus");
    pos_label = *positive;
  } else {
    if (distinct.size() != 2)
      throw std::invalid_argument("corpus has " + std::to_string(distinct.size()) +
                                  " distinct labels; set positive_label to binarize");
    pos_label = *distinct.rbegin();
  }
  std::vector<int> y;
  y.reserve(corpus.size());
  for (const auto& d : corpus) y.push_back(d.label == pos_label ? 1 : 0);
  return y;
}

struct Cell {
  std::size_t weighting_index, method_index, fuzzifier_index, dimension_index;
  ReduceMethod method;
  std::optional<double> fuzzifier;
  WeightMethod weighting;
  std::size_t dimension;
};

DenseMatrix take_rows(const DenseMatrix& m, const std::vector<std::size_t>& rows) {
  DenseMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

std::vector<int> take(const std::vector<int>& v, const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, const std::vector<Document>& corpus,
                                const RunOptions& options) {
  plan.validate();
  ExperimentResult result;
  auto t0 = std::chrono::steady_clock::now();
  const auto labels = binarize(corpus, plan.positive_label);
  const Dtm dtm = build_dtm(corpus, plan.tokenizer);
  result.timings.push_back({"dtm", elapsed_ms(t0), peak_rss_bytes()});

  const std::size_t n = corpus.size();
  const auto fold_of = stratified_kfold(labels, plan.folds, derive_seed(plan.master_seed, {1}));
  std::vector<std::vector<std::size_t>> train(plan.folds), test(plan.folds);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < plan.folds; ++f) (fold_of[i] == f ? test[f] : train[f]).push_back(i);
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);

  std::vector<Cell> cells;
  for (std::size_t wi = 0; wi < plan.weightings.size(); ++wi)
    for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
      const auto method = plan.methods[mi];
      const std::size_t nq = method == ReduceMethod::fc ? plan.fuzzifiers.size() : 1;
      for (std::size_t qi = 0; qi < nq; ++qi)
        for (std::size_t di = 0; di < plan.dimensions.size(); ++di)
          cells.push_back({wi, mi, qi, di, method,
                           method == ReduceMethod::fc ? std::optional<double>(plan.fuzzifiers[qi]) : std::nullopt,
                           plan.weightings[wi], plan.dimensions[di]});
    }

  std::mutex observer_mutex;
  auto observe = [&](std::size_t fold, const std::vector<std::size_t>& rows) {
    if (!options.on_fit) return;
    std::lock_guard<std::mutex> lock(observer_mutex);
    options.on_fit(fold, rows);
  };

  // Cells run in parallel; nested work stays single-threaded.
  const std::size_t inner_threads = plan.threads > 1 && cells.size() > 1 ? 1 : plan.threads;
  std::vector<std::vector<ResultRow>> cell_rows(cells.size());
  std::vector<std::optional<std::string>> cell_error(cells.size());

  auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    const std::uint64_t cell_seed = derive_seed(plan.master_seed, {2, cell.weighting_index, cell.method_index,
                                                                   cell.fuzzifier_index, cell.dimension_index});
    ReduceConfig rc;
    rc.fuzzy.q = cell.fuzzifier.value_or(2.0);
    rc.fuzzy.max_iterations = plan.fc_max_iterations;
    rc.fuzzy.min_improvement = plan.fc_min_improvement;
    rc.fuzzy.threads = inner_threads;

    auto score = [&](std::size_t fold, const DenseMatrix& train_x, const DenseMatrix& test_x) {
      const LabeledFeatures data{train_x, take(labels, train[fold])};
      const auto truth = take(labels, test[fold]);
      for (std::size_t ci = 0; ci < plan.classifiers.size(); ++ci) {
        const auto kind = plan.classifiers[ci];
        const std::uint64_t seed = derive_seed(cell_seed, {3, fold, ci});
        const TrainedClassifier model =
            kind == ClassifierKind::adaboost_stumps
                ? train_adaboost(data, plan.adaboost_rounds, seed)
                : train_random_forest(data, plan.rf_trees, plan.rf_max_depth, seed, inner_threads);
        const double acc = accuracy(confusion(predict(model, test_x), truth));
        cell_rows[c].push_back({cell.method, cell.fuzzifier, cell.weighting, cell.dimension, kind, fold, acc});
      }
    };

    if (plan.reduce_whole_corpus) {
      const auto gw = compute_weights(dtm.counts, cell.weighting);
      const SparseMatrix x = apply_weights(dtm.counts, gw);
      rc.fuzzy.seed = rc.svd.seed = derive_seed(cell_seed, {4});
      const Reduction red = fit_reduction(x, cell.method, cell.dimension, rc);
      observe(static_cast<std::size_t>(-1), all_rows);
      for (std::size_t f = 0; f < plan.folds; ++f)
        score(f, take_rows(red.representation, train[f]), take_rows(red.representation, test[f]));
    } else {
      for (std::size_t f = 0; f < plan.folds; ++f) {
        const SparseMatrix train_counts = dtm.counts.select_rows(train[f]);
        const auto gw = compute_weights(train_counts, cell.weighting);
        const SparseMatrix train_x = apply_weights(train_counts, gw);
        const SparseMatrix test_x = apply_weights(dtm.counts.select_rows(test[f]), gw);
        rc.fuzzy.seed = rc.svd.seed = derive_seed(cell_seed, {4, f});
        const Reduction red = fit_reduction(train_x, cell.method, cell.dimension, rc);
        observe(f, train[f]);
        score(f, red.representation, apply_reduction(red.model, test_x, inner_threads));
      }
    }
  };

  t0 = std::chrono::steady_clock::now();
  parallel_for(cells.size(), plan.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      try {
        run_cell(c);
      } catch (const std::exception& e) {
        cell_rows[c].clear();
        cell_error[c] = e.what();
      }
    }
  });
  result.timings.push_back({"grid", elapsed_ms(t0), peak_rss_bytes()});

  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cell_error[c]) {
      result.failures.push_back(
          {cells[c].method, cells[c].fuzzifier, cells[c].weighting, cells[c].dimension, *cell_error[c]});
    } else {
      result.rows.insert(result.rows.end(), cell_rows[c].begin(), cell_rows[c].end());
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const RunOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  const auto corpus = load_corpus(plan.corpus_path, format_from_path(plan.corpus_path));
  const double load_ms = elapsed_ms(t0);
  auto result = run_experiment(plan, corpus, options);
  result.timings.insert(result.timings.begin(), {"load", load_ms, peak_rss_bytes()});
  return result;
}

// --------------------------------------------------------------- reports

std::string render_report(const ExperimentResult& result, ReportFormat format) {
  std::ostringstream out;
  char buf[64];
  if (format == ReportFormat::csv) {
    out << "method,fuzzifier,weighting,dimension,classifier,fold,accuracy\n";
    for (const auto& r : result.rows) {
      std::snprintf(buf, sizeof buf, "%.17g", r.accuracy);
      out << to_string(r.method) << ',' << (r.fuzzifier ? format_fuzzifier(*r.fuzzifier) : "") << ','
          << to_string(r.weighting) << ',' << r.dimension << ',' << to_string(r.classifier) << ',' << r.fold << ','
          << buf << '\n';
    }
    return out.str();
  }

  const auto aggs = result.aggregates();
  std::vector<WeightMethod> weightings;
  for (const auto& a : aggs)
    if (std::find(weightings.begin(), weightings.end(), a.weighting) == weightings.end())
      weightings.push_back(a.weighting);
  for (auto w : weightings) {
    std::vector<std::string> series;
    std::vector<std::size_t> dims;
    std::map<std::pair<std::string, std::size_t>, double> mean;
    for (const auto& a : aggs) {
      if (a.weighting != w) continue;
      const auto label = series_label(a.method, a.fuzzifier);
      if (std::find(series.begin(), series.end(), label) == series.end()) series.push_back(label);
      if (std::find(dims.begin(), dims.end(), a.dimension) == dims.end()) dims.push_back(a.dimension);
      mean[{label, a.dimension}] = a.mean;
    }
    std::sort(dims.begin(), dims.end());
    out << "### Mean accuracy, weighting: " << to_string(w) << "\n\n| dimension |";
    for (const auto& s : series) out << ' ' << s << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < series.size(); ++i) out << "---|";
    out << '\n';
    for (auto d : dims) {
      out << "| " << d << " |";
      for (const auto& s : series) {
        auto it = mean.find({s, d});
        if (it == mean.end()) {
          out << " n/a |";
        } else {
          std::snprintf(buf, sizeof buf, " %.4f |", it->second);
          out << buf;
        }
      }
      out << '\n';
    }
    // Spread of the per-dimension means: how stable each series is across dimensions.
    out << "| std across dimensions |";
    for (const auto& s : series) {
      std::vector<double> v;
      for (auto d : dims)
        if (auto it = mean.find({s, d}); it != mean.end()) v.push_back(it->second);
      const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(std::max<std::size_t>(1, v.size()));
      double ss = 0.0;
      for (double x : v) ss += (x - m) * (x - m);
      std::snprintf(buf, sizeof buf, " %.4f |", v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0);
      out << buf;
    }
    out << "\n\n";
  }
  if (!result.failures.empty()) {
    out << "### Failed cells\n\n";
    for (const auto& f : result.failures)
      out << "- " << series_label(f.method, f.fuzzifier) << ", " << to_string(f.weighting) << ", k=" << f.dimension
          << ": " << f.message << '\n';
  }
  return out.str();
}

void emit_report(const ExperimentResult& result, const std::string& path, ReportFormat format) {
  if (result.rows.empty() && result.failures.empty()) throw std::invalid_argument("emit_report: empty result");
  const std::string text = render_report(result, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  out << text;
  if (!out) throw PathError("write failed: " + path);
}

std::vector<ResultRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != "method,fuzzifier,weighting,dimension,classifier,fold,accuracy")
    throw ParseError("report: bad header", 1);
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 7) throw ParseError("report: expected 7 fields", lineno);
    try {
      ResultRow r;
      r.method = reduce_method_from_string(f[0]);
      if (!f[1].empty()) r.fuzzifier = std::stod(f[1]);
      r.weighting = weight_method_from_string(f[2]);
      r.dimension = std::stoull(f[3]);
      r.classifier = classifier_from_string(f[4]);
      r.fold = std::stoull(f[5]);
      r.accuracy = std::stod(f[6]);
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw ParseError(std::string("report: ") + e.what(), lineno);
    }
  }
  return rows;
}

// ---------------------------------------------------------------- timing

std::uint64_t peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024u;  // Linux reports KiB
}

void write_timing_csv(const std::vector<TimingRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  out << "phase,wall_ms,peak_rss_bytes\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    out << r.phase << ',' << buf << ',' << r.peak_rss_bytes << '\n';
  }
  if (!out) throw PathError("write failed: " + path);
}

std::vector<BenchRecord> run_benchmark(const BenchPlan& plan) {
  if (plan.sizes.empty() || plan.methods.empty()) throw std::invalid_argument("bench: no sizes or methods");
  std::vector<BenchRecord> records;
  for (auto n : plan.sizes) {
    TopicCorpusSpec spec;
    spec.documents = n;
    spec.vocabulary = plan.vocabulary;
    spec.topic_terms = plan.vocabulary * 3 / 10;
    spec.overlap = spec.topic_terms / 3;
    spec.seed = derive_seed(plan.seed, {n});
    const auto corpus = generate_topic_corpus(spec);
    const Dtm dtm = build_dtm(corpus.documents, TokenizerConfig{});
    for (auto method : plan.methods) {
      ReduceConfig rc;
      rc.fuzzy.q = plan.q;
      rc.fuzzy.max_iterations = plan.fc_iterations;
      rc.fuzzy.min_improvement = std::numeric_limits<double>::min();
      rc.fuzzy.seed = rc.svd.seed = derive_seed(plan.seed, {n, static_cast<std::uint64_t>(method)});
      rc.fuzzy.threads = plan.threads;
      const auto t0 = std::chrono::steady_clock::now();
      const DenseMatrix rep = reduce(dtm.counts, method, plan.k, rc);
      const double ms = elapsed_ms(t0);
      if (static_cast<std::size_t>(rep.rows()) != n) throw std::logic_error("bench: wrong output shape");
      records.push_back({method, n, {std::string(to_string(method)) + ":n=" + std::to_string(n), ms, peak_rss_bytes()}});
    }
  }
  return records;
}

double fitted_exponent(const std::vector<double>& sizes, const std::vector<double>& times) {
  if (sizes.size() != times.size() || sizes.size() < 2)
    throw std::invalid_argument("fitted_exponent: need at least two (size, time) pairs");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    mx += std::log(sizes[i]) / n;
    my += std::log(times[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dx = std::log(sizes[i]) - mx;
    sxy += dx * (std::log(times[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace fzdr
