#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fzdr/baselines.hpp"
#include "fzdr/corpus.hpp"
#include "fzdr/errors.hpp"
#include "fzdr/evalharness.hpp"
#include "fzdr/parallel.hpp"
#include "fzdr/persistence.hpp"
#include "fzdr/synthetic.hpp"
#include "fzdr/weighting.hpp"

namespace fzdr::cli {

namespace {

struct TokenizerFlags {
  std::size_t min_token_length = 2;
  std::size_t min_df = 1;
  bool keep_case = false;
  bool keep_punctuation = false;
  std::string stopwords_path;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--min-token-length", min_token_length, "Drop shorter tokens")->capture_default_str();
    cmd.add_option("--min-df", min_df, "Drop terms in fewer documents")->capture_default_str();
    cmd.add_flag("--keep-case", keep_case, "Do not lowercase");
    cmd.add_flag("--keep-punctuation", keep_punctuation, "Split on whitespace only");
    cmd.add_option("--stopwords", stopwords_path, "File with one stopword per line");
  }

  TokenizerConfig build() const {
    TokenizerConfig cfg;
    cfg.lowercase = !keep_case;
    cfg.min_token_length = min_token_length;
    cfg.min_document_frequency = min_df;
    cfg.strip_non_alphanumeric = !keep_punctuation;
    if (!stopwords_path.empty()) {
      std::ifstream in(stopwords_path);
      if (!in) throw PathError("cannot read " + stopwords_path);
      std::set<std::string> words;
      for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) words.insert(line);
      }
      cfg.stopwords = std::move(words);
    }
    cfg.validate();
    return cfg;
  }
};

struct Logger {
  bool verbose = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void phase(const std::string& what) const {
    if (!verbose) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "[%9.1f ms] %s\n", ms, what.c_str());
  }
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PathError("cannot read " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw PathError("write failed: " + path);
}

/// Header `doc_id,<prefix>1..<prefix>k`; values printed round-trip exact.
void write_representation_csv(const DenseMatrix& rep, const std::vector<std::string>& ids, const std::string& prefix,
                              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  out << "doc_id";
  for (Eigen::Index c = 0; c < rep.cols(); ++c) out << ',' << prefix << (c + 1);
  out << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < rep.rows(); ++r) {
    out << ids[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < rep.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", rep(r, c));
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw PathError("write failed: " + path);
}

std::vector<std::string> row_ids(const std::string& ids_path, std::size_t n) {
  std::vector<std::string> ids;
  if (ids_path.empty()) {
    for (std::size_t i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
    return ids;
  }
  ids = read_lines(ids_path);
  while (!ids.empty() && ids.back().empty()) ids.pop_back();
  if (ids.size() != n)
    throw ParseError(ids_path + ": " + std::to_string(ids.size()) + " ids for " + std::to_string(n) + " rows");
  return ids;
}

template <class T>
std::vector<T> parse_list(const std::string& text, T (*convert)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(convert(item));
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument("not a non-negative integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

ReduceMethod to_method(const std::string& s) { return reduce_method_from_string(s); }

class Invalid : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Invalid(what);
}

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fuzzy-clustering dimensionality reduction for text classification", "fzdr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fzdr 0.1.0");
  Logger log;
  std::size_t threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", log.verbose, "Print one log line per phase to stderr");

  std::function<void()> action;

  // build-dtm
  auto* build = app.add_subcommand("build-dtm", "Corpus (JSONL/CSV) to Matrix Market DTM plus vocabulary");
  std::string b_corpus, b_format, b_out, b_vocab, b_ids, b_labels;
  TokenizerFlags b_tok;
  build->add_option("--corpus", b_corpus, "Corpus file")->required();
  build->add_option("--format", b_format, "jsonl or csv (default: by extension)")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  build->add_option("--out", b_out, "Matrix Market output")->required();
  build->add_option("--vocab", b_vocab, "Vocabulary output, one term per line")->required();
  build->add_option("--ids", b_ids, "Document id output, one per row");
  build->add_option("--labels", b_labels, "Document label output, one per row");
  b_tok.add_to(*build);
  build->callback([&] {
    action = [&] {
      const auto cfg = b_tok.build();
      const auto fmt = b_format.empty() ? format_from_path(b_corpus)
                                        : (b_format == "csv" ? CorpusFormat::csv : CorpusFormat::jsonl);
      const auto corpus = load_corpus(b_corpus, fmt);
      log.phase("loaded " + std::to_string(corpus.size()) + " documents");
      const auto dtm = build_dtm(corpus, cfg);
      log.phase("dtm " + std::to_string(dtm.counts.rows()) + "x" + std::to_string(dtm.counts.cols()) + ", nnz " +
                std::to_string(dtm.counts.nnz()));
      write_matrix_market(dtm.counts, b_out);
      dtm.vocabulary.save(b_vocab);
      std::vector<std::string> ids, labels;
      for (const auto& d : corpus) {
        ids.push_back(d.id);
        labels.push_back(d.label);
      }
      if (!b_ids.empty()) write_lines(ids, b_ids);
      if (!b_labels.empty()) write_lines(labels, b_labels);
    };
  });

  // weight
  auto* weight = app.add_subcommand("weight", "Apply a global term weighting to a DTM");
  std::string w_dtm, w_method, w_out, w_vocab, w_weights_out, w_model_out;
  weight->add_option("--dtm", w_dtm, "Matrix Market DTM")->required();
  weight->add_option("--method", w_method, "none, entropy, gfidf, idf, idf_df, normal, probidf")->required();
  weight->add_option("--out", w_out, "Weighted Matrix Market output")->required();
  weight->add_option("--vocab", w_vocab, "Vocabulary (needed for --weights-out/--model-out)");
  weight->add_option("--weights-out", w_weights_out, "CSV term,method,weight");
  weight->add_option("--model-out", w_model_out, "Binary weight model");
  weight->callback([&] {
    action = [&] {
      const auto method = weight_method_from_string(w_method);
      require(w_vocab.size() || (w_weights_out.empty() && w_model_out.empty()),
              "--weights-out and --model-out need --vocab");
      const auto dtm = read_matrix_market(w_dtm);
      std::optional<Vocabulary> vocab;
      if (!w_vocab.empty()) {
        vocab = Vocabulary::load(w_vocab);
        require(vocab->size() == dtm.cols(), "vocabulary has " + std::to_string(vocab->size()) + " terms, DTM has " +
                                                 std::to_string(dtm.cols()) + " columns");
      }
      const auto gw = compute_weights(dtm, method);
      log.phase(std::string("weights ") + std::string(to_string(method)));
      write_matrix_market(apply_weights(dtm, gw), w_out);
      if (!w_weights_out.empty()) write_weights_csv(gw, *vocab, w_weights_out);
      if (!w_model_out.empty()) save_model(make_saved_model(gw, *vocab), w_model_out);
    };
  });

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduce a DTM to k dimensions (fc, svd, pca)");
  std::string r_dtm, r_method = "fc", r_out, r_model_out, r_vocab, r_ids;
  std::size_t r_k = 0, r_iters = 100;
  double r_q = 2.0, r_min_improvement = 1e-5;
  std::uint64_t r_seed = 0;
  red->add_option("--dtm", r_dtm, "Matrix Market DTM")->required();
  red->add_option("--method", r_method, "fc, svd or pca")->capture_default_str();
  red->add_option("--k", r_k, "Target dimension")->required();
  red->add_option("--q", r_q, "Fuzzifier, > 1 (fc)")->capture_default_str();
  red->add_option("--seed", r_seed, "Seed")->capture_default_str();
  red->add_option("--max-iterations", r_iters, "Iteration cap (fc)")->capture_default_str();
  red->add_option("--min-improvement", r_min_improvement, "Relative stopping threshold (fc)")->capture_default_str();
  red->add_option("--out", r_out, "CSV doc_id,c_1..c_k (fc) or doc_id,f_1..f_k")->required();
  red->add_option("--model-out", r_model_out, "Binary model for transform (needs --vocab)");
  red->add_option("--vocab", r_vocab, "Vocabulary the DTM was built with");
  red->add_option("--ids", r_ids, "Document ids, one per row (default 1..n)");
  red->callback([&] {
    action = [&] {
      const auto method = reduce_method_from_string(r_method);
      ReduceConfig rc;
      rc.fuzzy.k = r_k;
      rc.fuzzy.q = r_q;
      rc.fuzzy.seed = r_seed;
      rc.fuzzy.max_iterations = r_iters;
      rc.fuzzy.min_improvement = r_min_improvement;
      rc.fuzzy.threads = threads;
      rc.svd.seed = r_seed;
      if (method == ReduceMethod::fc) rc.fuzzy.validate();
      require(r_k >= 1, "--k must be >= 1");
      require(r_model_out.empty() || !r_vocab.empty(), "--model-out needs --vocab");

      const auto dtm = read_matrix_market(r_dtm);
      std::optional<Vocabulary> vocab;
      if (!r_vocab.empty()) {
        vocab = Vocabulary::load(r_vocab);
        require(vocab->size() == dtm.cols(), "vocabulary has " + std::to_string(vocab->size()) + " terms, DTM has " +
                                                 std::to_string(dtm.cols()) + " columns");
      }
      const auto ids = row_ids(r_ids, dtm.rows());
      log.phase("read " + std::to_string(dtm.rows()) + "x" + std::to_string(dtm.cols()));
      auto result = fit_reduction(dtm, method, r_k, rc);
      log.phase(std::string("fitted ") + std::string(to_string(method)));
      write_representation_csv(result.representation, ids, method == ReduceMethod::fc ? "c_" : "f_", r_out);
      if (!r_model_out.empty()) {
        ModelPayload payload = std::visit([](auto m) -> ModelPayload { return m; }, std::move(result.model));
        save_model(make_saved_model(std::move(payload), *vocab), r_model_out);
      }
    };
  });

  // transform
  auto* tr = app.add_subcommand("transform", "Fold new documents into a fitted model");
  std::string t_model, t_vocab, t_corpus, t_format, t_weights, t_out;
  TokenizerFlags t_tok;
  tr->add_option("--model", t_model, "Model written by reduce --model-out")->required();
  tr->add_option("--vocab", t_vocab, "Vocabulary of the training DTM")->required();
  tr->add_option("--corpus", t_corpus, "New documents (JSONL/CSV)")->required();
  tr->add_option("--format", t_format, "jsonl or csv (default: by extension)")->check(CLI::IsMember({"jsonl", "csv"}));
  tr->add_option("--weights", t_weights, "Weight CSV or weight model used at training time");
  tr->add_option("--out", t_out, "CSV output")->required();
  t_tok.add_to(*tr);
  tr->callback([&] {
    action = [&] {
      auto cfg = t_tok.build();
      cfg.min_document_frequency = 1;
      const auto vocab = Vocabulary::load(t_vocab);
      const auto saved = load_model(t_model);
      check_vocabulary(saved, vocab);
      ReductionModel model;
      bool fc = false;
      std::visit(
          [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GlobalWeightVector>)
              throw Invalid("--model holds term weights, not a reduction");
            else {
              model = m;
              fc = std::is_same_v<T, FuzzyModel>;
            }
          },
          saved.payload);
      std::optional<GlobalWeightVector> gw;
      if (!t_weights.empty()) {
        std::ifstream probe(t_weights, std::ios::binary);
        char head[5] = {};
        probe.read(head, 5);
        if (probe.gcount() == 5 && std::string(head, 5) == "FZDM1") {
          const auto w = load_model(t_weights);
          check_vocabulary(w, vocab);
          if (!std::holds_alternative<GlobalWeightVector>(w.payload)) throw Invalid("--weights is not a weight model");
          gw = std::get<GlobalWeightVector>(w.payload);
        } else {
          gw = read_weights_csv(t_weights, vocab);
        }
      }
      const auto fmt = t_format.empty() ? format_from_path(t_corpus)
                                        : (t_format == "csv" ? CorpusFormat::csv : CorpusFormat::jsonl);
      const auto corpus = load_corpus(t_corpus, fmt);
      auto rows = vectorize(corpus, vocab, cfg);
      if (gw) rows = apply_weights(rows, *gw);
      std::vector<std::string> ids;
      for (const auto& d : corpus) ids.push_back(d.id);
      write_representation_csv(apply_reduction(model, rows, threads), ids, fc ? "c_" : "f_", t_out);
    };
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Run the cross-validated experiment grid from a JSON plan");
  std::string e_plan, e_out, e_format = "csv", e_timing;
  std::optional<std::uint64_t> e_seed;
  ev->add_option("--plan", e_plan, "JSON plan")->required();
  ev->add_option("--out", e_out, "Report path")->required();
  ev->add_option("--format", e_format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
  ev->add_option("--timing", e_timing, "Also write phase,wall_ms,peak_rss_bytes CSV");
  ev->add_option("--seed", e_seed, "Override the plan's master_seed");
  ev->callback([&] {
    action = [&] {
      auto plan = ExperimentPlan::from_json_file(e_plan);
      if (e_seed) plan.master_seed = *e_seed;
      if (app.get_option("--threads")->count()) plan.threads = threads;
      log.phase("plan loaded");
      const auto result = run_experiment(plan);
      log.phase(std::to_string(result.rows.size()) + " result rows, " + std::to_string(result.failures.size()) +
                " failed cells");
      emit_report(result, e_out, e_format == "csv" ? ReportFormat::csv : ReportFormat::markdown);
      if (!e_timing.empty()) write_timing_csv(result.timings, e_timing);
    };
  });

  // bench
  auto* be = app.add_subcommand("bench", "Wall time of each method on synthetic corpora of growing size");
  std::string s_sizes = "1000,2000,4000,8000", s_methods = "fc,svd,pca", s_out;
  BenchPlan bp;
  be->add_option("--sizes", s_sizes, "Comma-separated document counts")->capture_default_str();
  be->add_option("--methods", s_methods, "Comma-separated methods")->capture_default_str();
  be->add_option("--k", bp.k, "Target dimension")->capture_default_str();
  be->add_option("--vocabulary", bp.vocabulary, "Vocabulary width")->capture_default_str();
  be->add_option("--iterations", bp.fc_iterations, "Fuzzy iterations per fit")->capture_default_str();
  be->add_option("--q", bp.q, "Fuzzifier")->capture_default_str();
  be->add_option("--seed", bp.seed, "Seed")->capture_default_str();
  be->add_option("--out", s_out, "CSV phase,wall_ms,peak_rss_bytes")->required();
  be->callback([&] {
    action = [&] {
      bp.sizes = parse_list<std::size_t>(s_sizes, to_size);
      bp.methods = parse_list<ReduceMethod>(s_methods, to_method);
      bp.threads = threads;
      const auto records = run_benchmark(bp);
      std::vector<TimingRow> rows;
      for (const auto& r : records) rows.push_back(r.timing);
      write_timing_csv(rows, s_out);
      for (auto m : bp.methods) {
        std::vector<double> n, t;
        for (const auto& r : records)
          if (r.method == m) {
            n.push_back(static_cast<double>(r.documents));
            t.push_back(r.timing.wall_ms);
          }
        if (n.size() >= 2)
          log.phase(std::string(to_string(m)) + " fitted exponent " + std::to_string(fitted_exponent(n, t)));
      }
    };
  });

  // generate-corpus
  auto* gen = app.add_subcommand("generate-corpus", "Write a synthetic two-topic JSONL corpus");
  TopicCorpusSpec gs;
  std::string g_out;
  gen->add_option("--out", g_out, "JSONL output")->required();
  gen->add_option("--documents", gs.documents, "Documents")->capture_default_str();
  gen->add_option("--vocabulary", gs.vocabulary, "Vocabulary width")->capture_default_str();
  gen->add_option("--topic-terms", gs.topic_terms, "Terms per topic slice")->capture_default_str();
  gen->add_option("--overlap", gs.overlap, "Terms shared by both slices")->capture_default_str();
  gen->add_option("--topic-share", gs.topic_share, "Share of tokens drawn from the topic")->capture_default_str();
  gen->add_option("--min-length", gs.min_length, "Shortest document")->capture_default_str();
  gen->add_option("--max-length", gs.max_length, "Longest document")->capture_default_str();
  gen->add_option("--seed", gs.seed, "Seed")->capture_default_str();
  gen->callback([&] {
    action = [&] { write_corpus_jsonl(generate_topic_corpus(gs).documents, g_out); };
  });

  for (auto* sub : app.get_subcommands({})) sub->set_help_flag("-h,--help", "Print this help message and exit");

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: validation: %s\n", one_line(e.what()).c_str());
    return exit_validation;
  }

  try {
    if (action) action();
    return exit_ok;
  } catch (const PathError& e) {
    std::fprintf(stderr, "error: path: %s\n", one_line(e.what()).c_str());
    return exit_path;
  } catch (const ModelError& e) {
    // A well-formed model paired with the wrong vocabulary is a usage error.
    const bool usage = e.code() == ModelError::Code::checksum_mismatch;
    std::fprintf(stderr, "error: %s: %s\n", usage ? "validation" : "parse", one_line(e.what()).c_str());
    return usage ? exit_validation : exit_parse;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: parse: %s\n", one_line(e.what()).c_str());
    return exit_parse;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: validation: %s\n", one_line(e.what()).c_str());
    return exit_validation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", one_line(e.what()).c_str());
    return exit_internal;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}

}  // namespace fzdr::cli
