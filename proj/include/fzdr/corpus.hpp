#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fzdr/sparse_matrix.hpp"

namespace fzdr {

struct Document {
  std::string id;
  std::string label;
  std::string text;
};

enum class CorpusFormat { jsonl, csv };

/// Sorted unique terms; column i of a DTM is terms()[i].
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Terms must be strictly increasing (lexicographic) and unique.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t i) const { return terms_[i]; }
  std::optional<std::size_t> index_of(std::string_view term) const;

  /// FNV-1a 64 over the terms joined by '\n'.
  std::uint64_t checksum() const;

  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct TokenizerConfig {
  bool lowercase = true;
  std::size_t min_token_length = 2;
  std::optional<std::set<std::string>> stopwords;
  bool strip_non_alphanumeric = true;
  std::size_t min_document_frequency = 1;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

std::vector<Document> load_corpus(const std::string& path, CorpusFormat format);
/// Parses corpus text already in memory.
std::vector<Document> parse_corpus(std::string_view content, CorpusFormat format);
/// Guesses the format from the file extension (.csv → csv, otherwise jsonl).
CorpusFormat format_from_path(const std::string& path);

/// Splits on whitespace (or on any non-alphanumeric byte when
/// strip_non_alphanumeric is set), then applies case folding, the length
/// filter and the stopword filter. Non-ASCII bytes count as alphanumeric so
/// UTF-8 words stay intact.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg);

struct Dtm {
  SparseMatrix counts;
  Vocabulary vocabulary;
};

/// Counts term occurrences per document. Terms seen in fewer than
/// min_document_frequency documents are dropped. Rows follow corpus order;
/// empty documents become all-zero rows.
Dtm build_dtm(const std::vector<Document>& corpus, const TokenizerConfig& cfg);

/// Counts against a fixed vocabulary (out-of-vocabulary tokens are ignored).
SparseMatrix vectorize(const std::vector<Document>& corpus, const Vocabulary& vocab, const TokenizerConfig& cfg);

}  // namespace fzdr
