#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fzdr/corpus.hpp"

namespace fzdr {

/// Two-topic generative corpus. Every token of a document on topic t is
/// drawn from (1 - topic_share) * background + topic_share * topic_t, where
/// the background is Zipfian over the whole vocabulary and topic_t is uniform
/// over its slice. The two slices overlap by `overlap` terms. The observed
/// label equals the topic except for a `label_noise` fraction of documents,
/// which caps the Bayes accuracy near 1 - label_noise.
struct TopicCorpusSpec {
  std::size_t documents = 2000;
  std::size_t vocabulary = 5000;
  std::size_t topic_terms = 1500;  // slice width per topic
  std::size_t overlap = 500;
  double topic_share = 0.4;
  double label_noise = 0.05;
  std::size_t min_length = 60;
  std::size_t max_length = 120;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;
  std::string negative_label = "neg";
  std::string positive_label = "pos";
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  std::vector<int> labels;  // observed; 1 = positive_label
  std::vector<int> topics;  // generating topic; 1 = positive slice
  /// Per-term token probabilities of each class; index = term rank.
  std::vector<double> negative_distribution;
  std::vector<double> positive_distribution;
};

/// Term name for rank i, zero-padded so lexicographic order equals rank order.
std::string synthetic_term(std::size_t i, std::size_t vocabulary);

/// Topics alternate, so classes are balanced up to the label noise.
SyntheticCorpus generate_topic_corpus(const TopicCorpusSpec& spec);

/// Writes documents as JSONL (`id`, `label`, `text`).
void write_corpus_jsonl(const std::vector<Document>& docs, const std::string& path);

}  // namespace fzdr
