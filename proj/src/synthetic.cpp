#include "fzdr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "fzdr/errors.hpp"

namespace fzdr {

std::string synthetic_term(std::size_t i, std::size_t vocabulary) {
  const std::size_t digits = std::to_string(vocabulary > 0 ? vocabulary - 1 : 0).size();
  std::string num = std::to_string(i);
  return "w" + std::string(digits - std::min(digits, num.size()), '0') + num;
}

SyntheticCorpus generate_topic_corpus(const TopicCorpusSpec& spec) {
  if (spec.vocabulary < 2 || spec.topic_terms < 1 || spec.overlap > spec.topic_terms ||
      2 * spec.topic_terms - spec.overlap > spec.vocabulary)
    throw std::invalid_argument("synthetic corpus: topic slices do not fit the vocabulary");
  if (spec.min_length < 1 || spec.max_length < spec.min_length)
    throw std::invalid_argument("synthetic corpus: bad document length range");
  if (spec.topic_share < 0.0 || spec.topic_share > 1.0)
    throw std::invalid_argument("synthetic corpus: topic_share must be in [0, 1]");
  if (spec.label_noise < 0.0 || spec.label_noise > 0.5)
    throw std::invalid_argument("synthetic corpus: label_noise must be in [0, 0.5]");

  const std::size_t v = spec.vocabulary;
  std::mt19937_64 rng(spec.seed);

  // Zipf ranks are assigned through a shuffle so frequent background terms
  // land anywhere in the vocabulary.
  std::vector<std::size_t> rank_of(v);
  for (std::size_t i = 0; i < v; ++i) rank_of[i] = i;
  std::shuffle(rank_of.begin(), rank_of.end(), rng);
  std::vector<double> background(v);
  double zsum = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    background[i] = 1.0 / std::pow(static_cast<double>(rank_of[i] + 1), spec.zipf_exponent);
    zsum += background[i];
  }
  for (auto& b : background) b /= zsum;

  // Negative topic: [0, topic_terms); positive: [topic_terms - overlap, 2 topic_terms - overlap).
  const std::size_t pos_begin = spec.topic_terms - spec.overlap;
  SyntheticCorpus out;
  out.negative_distribution.assign(v, 0.0);
  out.positive_distribution.assign(v, 0.0);
  const double slice = spec.topic_share / static_cast<double>(spec.topic_terms);
  for (std::size_t i = 0; i < v; ++i) {
    const double base = (1.0 - spec.topic_share) * background[i];
    out.negative_distribution[i] = base + (i < spec.topic_terms ? slice : 0.0);
    out.positive_distribution[i] = base + (i >= pos_begin && i < pos_begin + spec.topic_terms ? slice : 0.0);
  }

  std::discrete_distribution<std::size_t> neg(out.negative_distribution.begin(), out.negative_distribution.end());
  std::discrete_distribution<std::size_t> pos(out.positive_distribution.begin(), out.positive_distribution.end());
  std::uniform_int_distribution<std::size_t> length(spec.min_length, spec.max_length);
  std::bernoulli_distribution flip(spec.label_noise);
  const std::size_t id_digits = std::to_string(spec.documents).size();
  for (std::size_t j = 0; j < spec.documents; ++j) {
    const int topic = static_cast<int>(j % 2);
    const std::size_t len = length(rng);
    std::string text;
    for (std::size_t t = 0; t < len; ++t) {
      if (t) text.push_back(' ');
      text += synthetic_term(topic ? pos(rng) : neg(rng), v);
    }
    const int y = flip(rng) ? 1 - topic : topic;
    std::string id = std::to_string(j);
    id = "d" + std::string(id_digits - id.size(), '0') + id;
    out.documents.push_back({id, y ? spec.positive_label : spec.negative_label, std::move(text)});
    out.labels.push_back(y);
    out.topics.push_back(topic);
  }
  return out;
}

void write_corpus_jsonl(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path);
  for (const auto& d : docs) out << nlohmann::json{{"id", d.id}, {"label", d.label}, {"text", d.text}}.dump() << '\n';
  if (!out) throw PathError("write failed: " + path);
}

}  // namespace fzdr
