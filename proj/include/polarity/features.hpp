#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarity/corpus.hpp"
#include "polarity/text.hpp"

namespace polarity {

enum class FeatureKind : uint8_t {
  Unigram,
  Bigram,
  UnigramBigram,
  UnigramPos,
  Adjectives,
  TopNUnigram,
  UnigramPosition,
};

enum class FeatureMode : uint8_t { Frequency, Presence };

std::string to_string(FeatureKind kind);
std::string to_string(FeatureMode mode);

struct FeatureConfig {
  FeatureKind kind = FeatureKind::Unigram;
  FeatureMode mode = FeatureMode::Presence;
  bool negation = true;
  size_t unigram_min_count = 4;
  size_t bigram_budget = 16165;
  std::optional<size_t> top_n;  // required iff kind == TopNUnigram
};

struct VocabEntry {
  std::string feature;
  uint64_t corpus_freq = 0;
  uint64_t doc_freq = 0;
};

struct Vocabulary {
  FeatureKind kind = FeatureKind::Unigram;
  bool negation = true;
  size_t unigram_min_count = 4;
  size_t bigram_budget = 0;
  std::optional<size_t> top_n;

  std::vector<VocabEntry> entries;  // position == feature id
  std::unordered_map<std::string, uint32_t> index;
  size_t unigram_count = 0;  // leading ids that are unigrams (== size() unless mixed kind)
  std::vector<std::string> train_doc_ids;  // sorted unique ids the vocabulary saw

  size_t size() const { return entries.size(); }
  std::optional<uint32_t> id_of(const std::string& feature) const;

  // Hash over config, ordered entries, and training doc ids.
  uint64_t fingerprint() const;

  // One entry per line: feature \t id \t corpus_freq \t doc_freq
  std::string to_tsv() const;
};

struct FeatureVector {
  std::string doc_id;
  FeatureMode mode = FeatureMode::Frequency;
  std::vector<std::pair<uint32_t, uint32_t>> entries;  // (id, count), sorted by id, counts > 0

  bool empty() const { return entries.empty(); }
  uint64_t count_sum() const;
};

// Rendered feature terms of one document under a kind, in document order.
// Unigram-style kinds render tokens individually; Bigram yields adjacent
// pairs of raw surfaces joined by a space (never negation/POS/zone tagged);
// UnigramBigram yields unigram terms followed by bigram terms.
std::vector<std::string> extract_terms(const TokenSeq& doc, FeatureKind kind, bool negation);

Vocabulary build_vocabulary(const std::vector<TokenSeq>& train_docs, const FeatureConfig& cfg);

FeatureVector vectorize(const TokenSeq& doc, const Vocabulary& vocab, const FeatureConfig& cfg);

// Presence-mode copy: every positive count becomes 1. Idempotent.
FeatureVector binarize(const FeatureVector& v);

// Sparse interchange line: label ("+1"/"-1") then id:count pairs by id.
std::string format_vector_line(const FeatureVector& v, Polarity label);
std::pair<Polarity, FeatureVector> parse_vector_line(const std::string& line);

}  // namespace polarity
