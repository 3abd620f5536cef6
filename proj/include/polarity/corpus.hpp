#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace polarity {

enum class Polarity : uint8_t { Pos = 0, Neg = 1 };

inline const char* to_string(Polarity p) { return p == Polarity::Pos ? "POS" : "NEG"; }
inline int class_index(Polarity p) { return p == Polarity::Pos ? 0 : 1; }

struct Document {
  std::string id;      // "pos/<file>" or "neg/<file>", unique within a corpus
  Polarity label = Polarity::Pos;
  std::string author;  // "unknown" when no author map is present
  std::string text;    // plain text, HTML stripped
};

struct Corpus {
  std::vector<Document> documents;
  bool has_author_map = false;
  size_t skipped_files = 0;

  // (author, label) -> number of documents
  std::map<std::pair<std::string, Polarity>, size_t> author_label_counts() const;
  size_t count(Polarity label) const;
  const Document* find(const std::string& id) const;
};

struct FoldPlan {
  uint64_t seed = 0;
  std::vector<std::vector<std::string>> folds;  // doc ids, disjoint

  std::string to_json() const;
  static FoldPlan from_json(const std::string& text);
};

struct LoadOptions {
  bool strip_html = true;
};

// Removes <...> tag spans, decodes the five named entities plus numeric
// entities, and collapses whitespace runs. A '<' with no closing '>' drops
// the dangling span and records a warning.
std::string strip_html(const std::string& raw);

// Loads <root>/pos/*.txt and <root>/neg/*.txt plus an optional
// <root>/authors.tsv (filename \t author). Missing pos/ or neg/ is fatal;
// unreadable files are skipped with a warning.
Corpus load_corpus(const std::filesystem::path& root, const LoadOptions& opts = {});

// Keeps at most cap-1 documents per (author, label) group, lexicographic by
// document id. cap must be >= 1; callers disable capping by not calling this.
Corpus apply_author_cap(const Corpus& corpus, size_t cap = 20);

// Selects n_per_class documents per label under the seed and partitions them
// into k folds with per-fold class counts differing by at most one.
FoldPlan make_folds(const Corpus& corpus, size_t n_per_class, size_t k, uint64_t seed);

// FNV-1a over sorted (id, content-digest) pairs; stable provenance id.
uint64_t corpus_fingerprint(const Corpus& corpus);

}  // namespace polarity
