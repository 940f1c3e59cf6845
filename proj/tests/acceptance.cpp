// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"
#include "fzdr/baselines.hpp"
#include "fzdr/classify.hpp"
#include "fzdr/evalharness.hpp"
#include "fzdr/fuzzy.hpp"
#include "fzdr/synthetic.hpp"
#include "fzdr/weighting.hpp"
#include "oracles.hpp"

using namespace fzdr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_diff(const DenseMatrix& a, const oracle::Dense& b) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b[r][c]));
  return worst;
}

/// Shared random suite for the membership criteria: n <= 50, m <= 30.
struct Instance {
  SparseMatrix dtm;
  std::size_t k;
  std::uint64_t seed;
};

std::vector<Instance> membership_suite() {
  std::vector<Instance> out;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 6 + rng() % 45, m = 2 + rng() % 29;
    const std::size_t k = 2 + rng() % 4;
    out.push_back({oracle::random_dtm(rng, n, m, 0.2, 1), k, rng()});
  }
  return out;
}

// ------------------------------------------------------------------ criteria

Outcome weight_formulas() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto a = fixture::worked_example();
  const auto d = oracle::to_rows(a);
  double worst = 0.0;
  worst = std::max(worst, max_diff(entropy_weights(a).weights, oracle::entropy(d)));
  worst = std::max(worst, max_diff(gfidf_weights(a).weights, oracle::gfidf(d)));
  worst = std::max(worst, max_diff(idf_weights(a).weights, oracle::idf(d, false)));
  worst = std::max(worst, max_diff(normal_weights(a).weights, oracle::normal(d)));
  o.require(worst <= 1e-12, "brute-force deviation " + fmt("%.3g", worst));
  o.require(std::abs(idf_weights(a).weights[3] - std::log2(5.0 / 4.0)) <= 1e-12, "idf(w4) != log2(5/4)");
  o.require(std::abs(normal_weights(a).weights[3] - 1.0 / std::sqrt(6.0)) <= 1e-12, "normal(w4) != 1/sqrt(6)");
  o.require(std::abs(entropy_weights(a).weights[3] - (1.0 - 1.5 / std::log2(5.0))) <= 1e-12, "entropy(w4)");
  o.require(std::abs(gfidf_weights(a).weights[0] - 1.25) <= 1e-12, "gfidf(w1) != 1.25");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + fmt("%.3f s", secs));
  if (o.pass) o.detail = "max deviation " + fmt("%.2g", worst) + ", " + fmt("%.4f s", secs);
  return o;
}

Outcome membership_constraints() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst_sum = 0.0;
  std::size_t fits = 0;
  for (const auto& inst : membership_suite())
    for (double q : {1.5, 2.0, 2.5, 3.0}) {
      FuzzyConfig cfg;
      cfg.k = inst.k;
      cfg.q = q;
      cfg.seed = inst.seed;
      const auto r = fit(inst.dtm, cfg);
      ++fits;
      const double n = static_cast<double>(inst.dtm.rows());
      for (Eigen::Index j = 0; j < r.memberships.rows(); ++j) {
        worst_sum = std::max(worst_sum, std::abs(r.memberships.row(j).sum() - 1.0));
        o.require(r.memberships.row(j).minCoeff() >= 0.0 && r.memberships.row(j).maxCoeff() <= 1.0,
                  "membership outside [0,1]");
      }
      for (Eigen::Index f = 0; f < r.memberships.cols(); ++f) {
        const double total = r.memberships.col(f).sum();
        o.require(total > 0.0 && total < n, "cluster total " + fmt("%.6g", total) + " not in (0, n)");
      }
    }
  o.require(worst_sum <= 1e-9, "row sum deviation " + fmt("%.3g", worst_sum));
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + fmt("%.1f s", secs));
  if (o.pass)
    o.detail = std::to_string(fits) + " fits, max |row sum - 1| " + fmt("%.2g", worst_sum) + ", " + fmt("%.2f s", secs);
  return o;
}

Outcome monotone_objective() {
  Outcome o;
  double worst_rise = -1e300;
  std::size_t steps = 0;
  for (const auto& inst : membership_suite())
    for (double q : {1.5, 2.0, 2.5, 3.0}) {
      FuzzyConfig cfg;
      cfg.k = inst.k;
      cfg.q = q;
      cfg.seed = inst.seed;
      const auto r = fit(inst.dtm, cfg);
      for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
        const double rise = r.objective_trace[t] - r.objective_trace[t - 1];
        worst_rise = std::max(worst_rise, rise);
        ++steps;
        o.require(rise <= 1e-10, "criterion rose by " + fmt("%.3g", rise));
      }
    }
  if (o.pass) o.detail = std::to_string(steps) + " steps, largest change " + fmt("%.3g", worst_rise);
  return o;
}

Outcome update_oracle() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = oracle::random_dtm(rng, 8, 5, 0.5);
    const std::size_t k = 2 + trial % 3;
    const double q = 1.1 + 3.0 * unit(rng);
    DenseMatrix v0(static_cast<Eigen::Index>(k), 5);
    for (Eigen::Index i = 0; i < v0.size(); ++i) v0.data()[i] = unit(rng);
    for (Eigen::Index f = 0; f < v0.rows(); ++f) v0.row(f).normalize();
    const auto x = a.normalized_rows();
    const auto docs = oracle::to_rows(a);
    const auto u = update_memberships(cosine_dissimilarities(x, v0), q);
    const auto u_ref = oracle::memberships(oracle::dissimilarities(docs, oracle::to_rows(v0)), q);
    const auto v = update_prototypes(x, u, q).prototypes;
    const auto v_ref = oracle::prototypes(docs, u_ref, q);
    worst = std::max({worst, max_diff(u, u_ref), max_diff(v, v_ref)});
  }
  o.require(worst <= 1e-10, "deviation " + fmt("%.3g", worst));
  if (o.pass) o.detail = "500 instances, max deviation " + fmt("%.2g", worst);
  return o;
}

Outcome fuzzifier_limits() {
  Outcome o;
  std::mt19937_64 rng(5);
  double crisp_min = 1.0, soft_dev = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    // Well separated: cluster c uses only its own block of 6 terms.
    const std::size_t k = 2 + trial % 3, per = 8;
    std::vector<std::vector<SparseEntry>> rows;
    std::uniform_int_distribution<int> count(1, 4);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < per; ++j) {
        std::vector<SparseEntry> row;
        for (std::uint32_t t = 0; t < 6; ++t)
          if (rng() % 2 || t == j % 6) row.push_back({static_cast<std::uint32_t>(6 * c + t), double(count(rng))});
        rows.push_back(row);
      }
    FuzzyConfig cfg;
    cfg.k = k;
    cfg.q = 1.01;
    cfg.seed = rng();
    const auto r = fit(SparseMatrix::from_rows(6 * k, rows), cfg);
    for (Eigen::Index j = 0; j < r.memberships.rows(); ++j) crisp_min = std::min(crisp_min, r.memberships.row(j).maxCoeff());
  }
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng() % 40, m = 10 + rng() % 21;
    FuzzyConfig cfg;
    cfg.k = 2 + trial % 4;
    cfg.q = 50.0;
    cfg.seed = rng();
    const auto r = fit(oracle::random_dtm(rng, n, m, 0.2, 3), cfg);
    const double uniform = 1.0 / static_cast<double>(cfg.k);
    soft_dev = std::max(soft_dev, (r.memberships.array() - uniform).abs().maxCoeff());
  }
  o.require(crisp_min > 0.99, "q=1.01 smallest row maximum " + fmt("%.4f", crisp_min));
  o.require(soft_dev <= 0.05, "q=50 deviation from 1/k " + fmt("%.4f", soft_dev));
  if (o.pass)
    o.detail = "q=1.01 min row max " + fmt("%.6f", crisp_min) + "; q=50 max |mu - 1/k| " + fmt("%.2g", soft_dev);
  return o;
}

Outcome svd_pca_oracle() {
  Outcome o;
  std::mt19937_64 rng(31);
  double worst_sv = 0.0, worst_score = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng() % 28, m = 2 + rng() % 19;
    const auto a = oracle::random_signed(rng, n, m, 0.4);
    const auto dense = oracle::to_rows(a);
    const std::size_t k = 1 + rng() % std::min(n - 1, m);

    const auto svd = truncated_svd(a, k);
    const auto ref = oracle::singular_values(dense);
    for (std::size_t i = 0; i < k; ++i) {
      // Relative to the value; numerically zero values are compared on the sigma_1 scale.
      const double scale = std::max(ref[i], 1e-8 * ref[0]);
      worst_sv = std::max(worst_sv, std::abs(svd.S[i] - ref[i]) / scale);
    }

    const auto pca = pca_scores(a, k);
    const auto ref_scores = oracle::pca_scores(dense, k);
    for (std::size_t c = 0; c < k; ++c) {
      double same = 0.0, flip = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        same = std::max(same, std::abs(pca.scores(j, c) - ref_scores[j][c]));
        flip = std::max(flip, std::abs(pca.scores(j, c) + ref_scores[j][c]));
      }
      worst_score = std::max(worst_score, std::min(same, flip));
    }
  }
  o.require(worst_sv <= 1e-6, "singular value relative error " + fmt("%.3g", worst_sv));
  o.require(worst_score <= 1e-6, "PCA score deviation " + fmt("%.3g", worst_score));
  if (o.pass)
    o.detail = "25 matrices, sigma rel err " + fmt("%.2g", worst_sv) + ", score err " + fmt("%.2g", worst_score);
  return o;
}

Outcome worked_example_shape() {
  Outcome o;
  fixture::TempDir dir;
  const std::vector<std::string> args{"fzdr", "reduce", "--dtm", fixture::data_path("worked_example.mtx"),
                                      "--method", "fc", "--k", "2", "--out", dir.file("m.csv")};
  o.require(cli::run(args) == 0, "reduce exited nonzero");
  std::istringstream in(fixture::slurp(dir.file("m.csv")));
  std::string line;
  std::getline(in, line);
  o.require(line == "doc_id,c_1,c_2", "header '" + line + "'");
  std::size_t rows = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string id, c1, c2;
    std::getline(ls, id, ',');
    std::getline(ls, c1, ',');
    std::getline(ls, c2, ',');
    const double a = std::stod(c1), b = std::stod(c2);
    o.require(a >= 0 && b >= 0, "negative membership");
    worst = std::max(worst, std::abs(a + b - 1.0));
  }
  o.require(rows == 5, std::to_string(rows) + " rows");
  o.require(worst <= 1e-12, "row sum deviation " + fmt("%.3g", worst));
  const double reduction = 1.0 - 2.0 / 10.0;
  o.require(std::abs(reduction - 0.8) < 1e-15, "dimension reduction");
  if (o.pass) o.detail = "5 x 2 row-stochastic, 10 -> 2 columns (80% reduction)";
  return o;
}

Outcome accuracy_metric() {
  Outcome o;
  o.require(accuracy(ConfusionMatrix{50, 5, 5, 40}) == 0.9, "tp=40 tn=50 fp=5 fn=5 is not exactly 0.9");
  // Hand-enumerated: (pred, truth) pairs.
  o.require(confusion({1, 0, 1, 0}, {1, 0, 0, 1}) == ConfusionMatrix{1, 1, 1, 1}, "one of each");
  o.require(confusion({1, 1, 1}, {1, 1, 1}) == ConfusionMatrix{0, 0, 0, 3}, "all tp");
  o.require(confusion({0, 0}, {1, 0}) == ConfusionMatrix{1, 0, 1, 0}, "tn + fn");
  o.require(accuracy(confusion({0, 0}, {1, 0})) == 0.5, "0.5 case");
  if (o.pass) o.detail = "0.9 exact; confusion cases match";
  return o;
}

/// Bayes accuracy under the true generative model, label noise included.
double bayes_accuracy(const SyntheticCorpus& c, double noise) {
  std::size_t right = 0;
  for (std::size_t j = 0; j < c.documents.size(); ++j) {
    double llr = 0.0;
    std::istringstream ss(c.documents[j].text);
    for (std::string tok; ss >> tok;) {
      const std::size_t i = std::stoul(tok.substr(1));
      llr += std::log(c.positive_distribution[i]) - std::log(c.negative_distribution[i]);
    }
    const double p_topic = 1.0 / (1.0 + std::exp(-llr));
    const double p_label = (1.0 - noise) * p_topic + noise * (1.0 - p_topic);
    right += (p_label > 0.5) == (c.labels[j] == 1);
  }
  return static_cast<double>(right) / static_cast<double>(c.documents.size());
}

ExperimentPlan desk_plan() {
  ExperimentPlan plan;
  plan.dimensions = {10, 20, 30, 40, 50};
  plan.methods = {ReduceMethod::fc, ReduceMethod::pca, ReduceMethod::svd};
  plan.fuzzifiers = {1.5, 2.0};
  plan.weightings = {WeightMethod::entropy};
  plan.folds = 5;
  plan.master_seed = 42;
  return plan;
}

struct DeskRun {
  std::string csv;
  fixture::TempDir dir;
};

Outcome desk_experiment(DeskRun& run) {
  Outcome o;
  const TopicCorpusSpec spec;  // 2000 documents, 5000 terms
  const auto corpus = generate_topic_corpus(spec);
  const double bayes = bayes_accuracy(corpus, spec.label_noise);
  std::printf("  corpus: %zu docs, vocabulary %zu, Bayes accuracy %.4f\n", corpus.documents.size(), spec.vocabulary,
              bayes);
  write_corpus_jsonl(corpus.documents, run.dir.file("corpus.jsonl"));

  const auto t0 = Clock::now();
  const auto result = run_experiment(desk_plan(), corpus.documents);
  const double secs = seconds_since(t0);
  run.csv = render_report(result, ReportFormat::csv);

  o.require(result.failures.empty(), std::to_string(result.failures.size()) + " failed cells");
  o.require(result.rows.size() == 4 * 5 * 5 * 2, std::to_string(result.rows.size()) + " result rows");
  o.require(secs < 300.0, "runtime " + fmt("%.1f s", secs));
  double lowest = 1.0;
  for (const auto& a : result.aggregates()) {
    lowest = std::min(lowest, a.mean);
    o.require(a.mean >= 0.80, series_label(a.method, a.fuzzifier) + " dim " + std::to_string(a.dimension) +
                                  " accuracy " + fmt("%.4f", a.mean));
  }
  std::printf("%s", render_report(result, ReportFormat::markdown).c_str());
  // Spread across folds and classifiers, averaged over dimensions.
  std::map<std::string, std::pair<double, int>> spread;
  for (const auto& a : result.aggregates()) {
    auto& s = spread[series_label(a.method, a.fuzzifier)];
    s.first += a.stddev;
    s.second += 1;
  }
  for (const auto& [label, s] : spread) std::printf("  %s mean std %.4f\n", label.c_str(), s.first / s.second);
  if (o.pass) o.detail = "lowest cell " + fmt("%.4f", lowest) + ", grid " + fmt("%.1f s", secs);
  return o;
}

Outcome determinism(DeskRun& run) {
  Outcome o;
  if (run.csv.empty()) {
    o.require(false, "first run produced no report");
    return o;
  }
  // Second run goes through the CLI and the corpus file.
  fixture::spit(run.dir.file("plan.json"), R"({"corpus": "corpus.jsonl", "dimensions": [10, 20, 30, 40, 50],
    "methods": ["fc", "pca", "svd"], "fuzzifiers": [1.5, 2.0], "weightings": ["entropy"], "folds": 5,
    "master_seed": 42})");
  const std::vector<std::string> args{"fzdr", "--threads", "1", "evaluate", "--plan", run.dir.file("plan.json"),
                                      "--out", run.dir.file("second.csv")};
  o.require(cli::run(args) == 0, "evaluate exited nonzero");
  const auto second = fixture::slurp(run.dir.file("second.csv"));
  o.require(second == run.csv, "report CSVs differ");
  if (o.pass) o.detail = "byte-identical (" + std::to_string(second.size()) + " bytes)";
  return o;
}

Outcome complexity() {
  Outcome o;
  BenchPlan plan;
  plan.methods = {ReduceMethod::fc};
  const auto records = run_benchmark(plan);
  std::vector<double> n, t;
  for (const auto& r : records) {
    n.push_back(static_cast<double>(r.documents));
    t.push_back(r.timing.wall_ms);
    std::printf("  %s %.1f ms\n", r.timing.phase.c_str(), r.timing.wall_ms);
  }
  const double slope = fitted_exponent(n, t);
  o.require(slope <= 1.3, "fitted exponent " + fmt("%.3f", slope));
  if (o.pass) o.detail = "fitted exponent " + fmt("%.3f", slope);
  return o;
}

}  // namespace

int main() {
  DeskRun desk;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  global weight formulas on the worked example", weight_formulas},
      {"2  membership constraints on random DTMs", membership_constraints},
      {"3  spherical criterion is non-increasing", monotone_objective},
      {"4  membership and prototype updates match oracle", update_oracle},
      {"5  fuzzifier limits (q=1.01 crisp, q=50 uniform)", fuzzifier_limits},
      {"6  SVD and PCA match dense oracles", svd_pca_oracle},
      {"7  CLI reduce on the worked example: 5 x 2", worked_example_shape},
      {"8  accuracy metric and confusion counts", accuracy_metric},
      {"9  desk-scale two-topic experiment", [&] { return desk_experiment(desk); }},
      {"10 determinism of the experiment report", [&] { return determinism(desk); }},
      {"11 fuzzy reduction scales at most linearly in n", complexity},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
