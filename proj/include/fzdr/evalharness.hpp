#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fzdr/baselines.hpp"
#include "fzdr/classify.hpp"
#include "fzdr/corpus.hpp"
#include "fzdr/weighting.hpp"

namespace fzdr {

/// Assigns every instance a test fold in [0, folds). Each class is shuffled
/// with `seed` and dealt round-robin, continuing the deal across classes, so
/// class proportions and fold sizes each differ by at most one.
/// Throws std::invalid_argument if folds < 2 or a class has fewer than `folds` members.
std::vector<std::size_t> stratified_kfold(const std::vector<int>& labels, std::size_t folds, std::uint64_t seed);

struct ExperimentPlan {
  std::string corpus_path;
  std::vector<std::size_t> dimensions{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<ReduceMethod> methods{ReduceMethod::fc, ReduceMethod::pca, ReduceMethod::svd};
  std::vector<double> fuzzifiers{1.5, 2.0, 2.5, 3.0};
  std::vector<WeightMethod> weightings{WeightMethod::none};
  std::size_t folds = 5;
  std::vector<ClassifierKind> classifiers{ClassifierKind::adaboost_stumps, ClassifierKind::random_forest};
  std::uint64_t master_seed = 42;

  /// Reduce the whole corpus once before cross-validation (the simpler
  /// protocol). When false the weights and the reduction are fit on each
  /// training split and test rows are folded in.
  bool reduce_whole_corpus = true;
  /// Label mapped to class 1. Unset: the corpus must have exactly two labels
  /// and the lexicographically larger one is positive.
  std::optional<std::string> positive_label;

  TokenizerConfig tokenizer;
  std::size_t fc_max_iterations = 100;
  double fc_min_improvement = 1e-5;
  std::size_t adaboost_rounds = 50;
  std::size_t rf_trees = 100;
  std::size_t rf_max_depth = 12;
  std::size_t threads = 1;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  /// Every field optional; unknown keys are rejected. A relative corpus
  /// path is resolved against the plan file's directory.
  static ExperimentPlan from_json_file(const std::string& path);
  static ExperimentPlan from_json_text(const std::string& text);
};

struct ResultRow {
  ReduceMethod method = ReduceMethod::fc;
  std::optional<double> fuzzifier;  // fc only
  WeightMethod weighting = WeightMethod::none;
  std::size_t dimension = 0;
  ClassifierKind classifier = ClassifierKind::adaboost_stumps;
  std::size_t fold = 0;
  double accuracy = 0.0;

  bool operator==(const ResultRow&) const = default;
};

/// A grid cell (method, fuzzifier, weighting, dimension) that threw.
struct CellFailure {
  ReduceMethod method = ReduceMethod::fc;
  std::optional<double> fuzzifier;
  WeightMethod weighting = WeightMethod::none;
  std::size_t dimension = 0;
  std::string message;
};

/// Mean and sample standard deviation of one cell over folds and classifiers.
struct Aggregate {
  ReduceMethod method = ReduceMethod::fc;
  std::optional<double> fuzzifier;
  WeightMethod weighting = WeightMethod::none;
  std::size_t dimension = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// One timing-mode record.
struct TimingRow {
  std::string phase;
  double wall_ms = 0.0;
  std::uint64_t peak_rss_bytes = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<CellFailure> failures;
  /// Per-phase wall time (load, dtm, grid). Not part of the CSV report.
  std::vector<TimingRow> timings;

  std::vector<Aggregate> aggregates() const;
};

/// Series label used in reports: "FC-1.5", "PCA", "SVD".
std::string series_label(ReduceMethod method, std::optional<double> fuzzifier);

/// Instrumentation: called for every fitted reduction with the fold index
/// (npos when the whole corpus is reduced) and the document rows used to fit it.
using FitObserver = std::function<void(std::size_t fold, const std::vector<std::size_t>& fitted_rows)>;

struct RunOptions {
  FitObserver on_fit;
};

/// Runs the full grid on an in-memory corpus.
ExperimentResult run_experiment(const ExperimentPlan& plan, const std::vector<Document>& corpus,
                                const RunOptions& options = {});
/// Loads plan.corpus_path and runs the grid.
ExperimentResult run_experiment(const ExperimentPlan& plan, const RunOptions& options = {});

enum class ReportFormat { csv, markdown };

/// CSV: `method,fuzzifier,weighting,dimension,classifier,fold,accuracy`.
/// Markdown: one table per weighting, one row per dimension, one column per series.
void emit_report(const ExperimentResult& result, const std::string& path, ReportFormat format);
std::string render_report(const ExperimentResult& result, ReportFormat format);
/// Parses the CSV report back into rows.
std::vector<ResultRow> parse_report_csv(const std::string& text);

/// Peak resident set size of this process so far.
std::uint64_t peak_rss_bytes();

/// CSV with header `phase,wall_ms,peak_rss_bytes`.
void write_timing_csv(const std::vector<TimingRow>& rows, const std::string& path);

/// Timing mode: fit each method on synthetic two-topic corpora of growing
/// size at fixed k and vocabulary width.
struct BenchPlan {
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  std::vector<ReduceMethod> methods{ReduceMethod::fc, ReduceMethod::svd, ReduceMethod::pca};
  std::size_t k = 10;
  std::size_t vocabulary = 2000;
  /// Fuzzy iterations per fit; convergence checks are disabled so every
  /// size does the same amount of work per document.
  std::size_t fc_iterations = 20;
  double q = 2.0;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct BenchRecord {
  ReduceMethod method = ReduceMethod::fc;
  std::size_t documents = 0;
  TimingRow timing;
};

std::vector<BenchRecord> run_benchmark(const BenchPlan& plan);

/// Least-squares slope of log(time) against log(size).
double fitted_exponent(const std::vector<double>& sizes, const std::vector<double>& times);

}  // namespace fzdr
