#include "fzdr/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "fzdr/errors.hpp"

namespace fzdr {

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i]))
      throw std::invalid_argument("vocabulary terms must be sorted and unique");
    index_.emplace(terms_[i], i);
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) feed('\n');
    for (unsigned char c : terms_[i]) feed(c);
  }
  return h;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  for (const auto& t : terms_) out << t << '\n';
  if (!out) throw PathError("write failed: " + path);
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::vector<std::string> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError("empty vocabulary term", lineno);
    if (!terms.empty() && !(terms.back() < line)) throw ParseError("vocabulary not sorted/unique", lineno);
    terms.push_back(line);
  }
  return Vocabulary(std::move(terms));
}

void TokenizerConfig::validate() const {
  if (min_token_length < 1) throw std::invalid_argument("min_token_length must be >= 1");
  if (min_document_frequency < 1) throw std::invalid_argument("min_document_frequency must be >= 1");
}

namespace {

Document document_from_json(const nlohmann::json& obj, std::size_t lineno) {
  if (!obj.is_object()) throw ParseError("record is not a JSON object", lineno);
  Document doc;
  for (auto [field, target] : {std::pair{"id", &doc.id}, {"label", &doc.label}, {"text", &doc.text}}) {
    auto it = obj.find(field);
    if (it == obj.end()) throw ParseError(std::string("missing field '") + field + "'", lineno);
    if (!it->is_string()) throw ParseError(std::string("field '") + field + "' is not a string", lineno);
    *target = it->get<std::string>();
  }
  return doc;
}

std::vector<Document> parse_jsonl(std::string_view content) {
  std::vector<Document> docs;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    docs.push_back(document_from_json(obj, lineno));
  }
  return docs;
}

// RFC 4180: fields separated by commas, optionally quoted, "" escapes a
// quote, quoted fields may span lines.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line;
};

std::vector<CsvRecord> parse_csv_records(std::string_view content) {
  std::vector<CsvRecord> records;
  std::size_t i = 0;
  std::size_t lineno = 1;
  while (i < content.size()) {
    CsvRecord rec{{}, lineno};
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < content.size() && content[i] == '"') {
        ++i;
        for (;;) {
          if (i >= content.size()) throw ParseError("unterminated quoted field", rec.line);
          char c = content[i++];
          if (c == '"') {
            if (i < content.size() && content[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++lineno;
            field.push_back(c);
          }
        }
        if (i < content.size() && content[i] != ',' && content[i] != '\n' && content[i] != '\r')
          throw ParseError("unexpected character after closing quote", lineno);
      } else {
        while (i < content.size() && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
          if (content[i] == '"') throw ParseError("quote inside unquoted field", lineno);
          field.push_back(content[i++]);
        }
      }
      rec.fields.push_back(field);
      if (i >= content.size()) {
        done = true;
      } else if (content[i] == ',') {
        ++i;
      } else {
        if (content[i] == '\r') ++i;
        if (i < content.size() && content[i] == '\n') ++i;
        ++lineno;
        done = true;
      }
    }
    if (!(rec.fields.size() == 1 && rec.fields[0].empty())) records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Document> parse_csv(std::string_view content) {
  auto records = parse_csv_records(content);
  std::vector<Document> docs;
  if (records.empty()) return docs;
  const auto& header = records.front();
  if (header.fields != std::vector<std::string>{"id", "label", "text"})
    throw ParseError("expected header 'id,label,text'", header.line);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 3)
      throw ParseError("expected 3 fields, got " + std::to_string(rec.fields.size()), rec.line);
    docs.push_back({rec.fields[0], rec.fields[1], rec.fields[2]});
  }
  return docs;
}

bool is_token_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

std::vector<Document> parse_corpus(std::string_view content, CorpusFormat format) {
  auto docs = format == CorpusFormat::jsonl ? parse_jsonl(content) : parse_csv(content);
  std::unordered_set<std::string> ids;
  for (const auto& d : docs)
    if (!ids.insert(d.id).second) throw ParseError("duplicate document id '" + d.id + "'");
  return docs;
}

std::vector<Document> load_corpus(const std::string& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), format);
}

CorpusFormat format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (ext == "csv") return CorpusFormat::csv;
  }
  return CorpusFormat::jsonl;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (current.size() >= cfg.min_token_length && !(cfg.stopwords && cfg.stopwords->count(current)))
      tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    const bool sep = cfg.strip_non_alphanumeric ? !is_token_byte(c) : std::isspace(c) != 0;
    if (sep) {
      flush();
      continue;
    }
    current.push_back(cfg.lowercase && c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  flush();
  return tokens;
}

namespace {

std::vector<std::map<std::string, double>> count_tokens(const std::vector<Document>& corpus,
                                                        const TokenizerConfig& cfg) {
  std::vector<std::map<std::string, double>> counts(corpus.size());
  for (std::size_t j = 0; j < corpus.size(); ++j)
    for (auto& tok : tokenize(corpus[j].text, cfg)) counts[j][tok] += 1.0;
  return counts;
}

}  // namespace

Dtm build_dtm(const std::vector<Document>& corpus, const TokenizerConfig& cfg) {
  cfg.validate();
  if (corpus.empty()) throw std::invalid_argument("build_dtm: empty corpus");
  auto counts = count_tokens(corpus, cfg);
  std::map<std::string, std::size_t> doc_freq;
  for (const auto& row : counts)
    for (const auto& [term, _] : row) ++doc_freq[term];
  std::vector<std::string> terms;
  for (const auto& [term, df] : doc_freq)
    if (df >= cfg.min_document_frequency) terms.push_back(term);
  if (terms.empty()) throw std::invalid_argument("empty vocabulary");
  Vocabulary vocab(std::move(terms));

  std::vector<std::vector<SparseEntry>> rows(corpus.size());
  for (std::size_t j = 0; j < corpus.size(); ++j)
    for (const auto& [term, n] : counts[j])
      if (auto col = vocab.index_of(term)) rows[j].push_back({static_cast<std::uint32_t>(*col), n});
  return {SparseMatrix::from_rows(vocab.size(), rows), std::move(vocab)};
}

SparseMatrix vectorize(const std::vector<Document>& corpus, const Vocabulary& vocab, const TokenizerConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<SparseEntry>> rows(corpus.size());
  for (std::size_t j = 0; j < corpus.size(); ++j)
    for (auto& tok : tokenize(corpus[j].text, cfg))
      if (auto col = vocab.index_of(tok)) rows[j].push_back({static_cast<std::uint32_t>(*col), 1.0});
  return SparseMatrix::from_rows(vocab.size(), rows);
}

}  // namespace fzdr
