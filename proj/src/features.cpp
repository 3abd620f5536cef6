#include "polarity/features.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "polarity/hash.hpp"

namespace polarity {

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Unigram: return "unigram";
    case FeatureKind::Bigram: return "bigram";
    case FeatureKind::UnigramBigram: return "unigram+bigram";
    case FeatureKind::UnigramPos: return "unigram+pos";
    case FeatureKind::Adjectives: return "adjectives";
    case FeatureKind::TopNUnigram: return "top-n-unigram";
    case FeatureKind::UnigramPosition: return "unigram+position";
  }
  return "?";
}

std::string to_string(FeatureMode mode) {
  return mode == FeatureMode::Frequency ? "freq" : "pres";
}

std::optional<uint32_t> Vocabulary::id_of(const std::string& feature) const {
  auto it = index.find(feature);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

uint64_t Vocabulary::fingerprint() const {
  uint64_t h = fnv1a(to_string(kind));
  h = fnv1a(negation ? "neg" : "raw", h);
  h = fnv1a_u64(unigram_min_count, h);
  h = fnv1a_u64(bigram_budget, h);
  h = fnv1a_u64(top_n ? *top_n + 1 : 0, h);
  for (const auto& e : entries) {
    h = fnv1a(e.feature, h);
    h = fnv1a_u64(e.corpus_freq, h);
  }
  for (const auto& id : train_doc_ids) h = fnv1a(id, h);
  return h;
}

std::string Vocabulary::to_tsv() const {
  std::ostringstream out;
  for (size_t i = 0; i < entries.size(); ++i)
    out << entries[i].feature << '\t' << i << '\t' << entries[i].corpus_freq << '\t'
        << entries[i].doc_freq << '\n';
  return out.str();
}

uint64_t FeatureVector::count_sum() const {
  uint64_t s = 0;
  for (const auto& [id, n] : entries) s += n;
  return s;
}

namespace {

bool is_unigram_style(FeatureKind kind) {
  return kind == FeatureKind::Unigram || kind == FeatureKind::UnigramPos ||
         kind == FeatureKind::Adjectives || kind == FeatureKind::TopNUnigram ||
         kind == FeatureKind::UnigramPosition;
}

void require_tags(const TokenSeq& doc, FeatureKind kind) {
  for (const auto& tok : doc.tokens)
    if (tok.kind == TokenKind::Word && !tok.pos_tag)
      throw std::invalid_argument(to_string(kind) +
                                  " features require POS-tagged input; document '" + doc.doc_id +
                                  "' has untagged words");
}

// Render settings per kind. Bigrams are handled separately (raw surfaces).
RenderOpts render_opts_for(FeatureKind kind, bool negation) {
  RenderOpts opts;
  opts.negation = negation;
  opts.pos = kind == FeatureKind::UnigramPos;
  opts.zone = kind == FeatureKind::UnigramPosition;
  return opts;
}

void append_unigram_terms(const TokenSeq& doc, FeatureKind kind, bool negation,
                          std::vector<std::string>& out) {
  if (kind == FeatureKind::UnigramPos || kind == FeatureKind::Adjectives)
    require_tags(doc, kind);
  const RenderOpts opts = render_opts_for(kind, negation);
  for (const auto& tok : doc.tokens) {
    if (kind == FeatureKind::Adjectives &&
        (tok.kind != TokenKind::Word || tok.pos_tag->rfind("JJ", 0) != 0))
      continue;
    out.push_back(render_token(tok, opts));
  }
}

void append_bigram_terms(const TokenSeq& doc, std::vector<std::string>& out) {
  const RenderOpts raw{false, false, false};
  for (size_t i = 0; i + 1 < doc.tokens.size(); ++i)
    out.push_back(render_token(doc.tokens[i], raw) + ' ' + render_token(doc.tokens[i + 1], raw));
}

struct TermStats {
  uint64_t corpus_freq = 0;
  uint64_t doc_freq = 0;
  size_t last_doc = SIZE_MAX;
};

using TermTally = std::map<std::string, TermStats>;

void tally(const std::vector<std::string>& terms, size_t doc_index, TermTally& tally_map) {
  for (const auto& t : terms) {
    auto& s = tally_map[t];
    ++s.corpus_freq;
    if (s.last_doc != doc_index) {
      s.last_doc = doc_index;
      ++s.doc_freq;
    }
  }
}

// Orders by descending corpus frequency, then lexicographic.
std::vector<std::pair<std::string, TermStats>> ranked(const TermTally& tally_map) {
  std::vector<std::pair<std::string, TermStats>> v(tally_map.begin(), tally_map.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second.corpus_freq != b.second.corpus_freq)
      return a.second.corpus_freq > b.second.corpus_freq;
    return a.first < b.first;
  });
  return v;
}

void emit(Vocabulary& vocab, const std::string& feature, const TermStats& s) {
  vocab.index.emplace(feature, static_cast<uint32_t>(vocab.entries.size()));
  vocab.entries.push_back({feature, s.corpus_freq, s.doc_freq});
}

void validate(const FeatureConfig& cfg) {
  if (cfg.kind == FeatureKind::TopNUnigram) {
    if (!cfg.top_n) throw std::invalid_argument("top_n is required for top-n-unigram features");
    if (*cfg.top_n == 0) throw std::invalid_argument("top_n must be positive");
  } else if (cfg.top_n) {
    throw std::invalid_argument("top_n is only valid for top-n-unigram features");
  }
}

}  // namespace

std::vector<std::string> extract_terms(const TokenSeq& doc, FeatureKind kind, bool negation) {
  std::vector<std::string> terms;
  terms.reserve(doc.tokens.size() * (kind == FeatureKind::UnigramBigram ? 2 : 1));
  if (is_unigram_style(kind) || kind == FeatureKind::UnigramBigram)
    append_unigram_terms(doc, kind == FeatureKind::UnigramBigram ? FeatureKind::Unigram : kind,
                         negation, terms);
  if (kind == FeatureKind::Bigram || kind == FeatureKind::UnigramBigram)
    append_bigram_terms(doc, terms);
  return terms;
}

Vocabulary build_vocabulary(const std::vector<TokenSeq>& train_docs, const FeatureConfig& cfg) {
  validate(cfg);

  Vocabulary vocab;
  vocab.kind = cfg.kind;
  vocab.negation = cfg.negation;
  vocab.unigram_min_count = cfg.unigram_min_count;
  vocab.bigram_budget = cfg.bigram_budget;
  vocab.top_n = cfg.top_n;

  TermTally unigrams, bigrams;
  std::vector<std::string> scratch;
  for (size_t d = 0; d < train_docs.size(); ++d) {
    const TokenSeq& doc = train_docs[d];
    vocab.train_doc_ids.push_back(doc.doc_id);
    if (is_unigram_style(cfg.kind) || cfg.kind == FeatureKind::UnigramBigram) {
      scratch.clear();
      append_unigram_terms(
          doc, cfg.kind == FeatureKind::UnigramBigram ? FeatureKind::Unigram : cfg.kind,
          cfg.negation, scratch);
      tally(scratch, d, unigrams);
    }
    if (cfg.kind == FeatureKind::Bigram || cfg.kind == FeatureKind::UnigramBigram) {
      scratch.clear();
      append_bigram_terms(doc, scratch);
      tally(scratch, d, bigrams);
    }
  }
  std::sort(vocab.train_doc_ids.begin(), vocab.train_doc_ids.end());
  vocab.train_doc_ids.erase(std::unique(vocab.train_doc_ids.begin(), vocab.train_doc_ids.end()),
                            vocab.train_doc_ids.end());

  if (cfg.kind == FeatureKind::TopNUnigram) {
    auto r = ranked(unigrams);
    const size_t n = std::min(*cfg.top_n, r.size());
    for (size_t i = 0; i < n; ++i) emit(vocab, r[i].first, r[i].second);
  } else if (is_unigram_style(cfg.kind) || cfg.kind == FeatureKind::UnigramBigram) {
    for (const auto& [term, stats] : ranked(unigrams))
      if (stats.corpus_freq >= cfg.unigram_min_count) emit(vocab, term, stats);
  }
  vocab.unigram_count = vocab.entries.size();

  if (cfg.kind == FeatureKind::Bigram || cfg.kind == FeatureKind::UnigramBigram) {
    auto r = ranked(bigrams);
    const size_t n = std::min(cfg.bigram_budget, r.size());
    for (size_t i = 0; i < n; ++i) emit(vocab, r[i].first, r[i].second);
  }

  return vocab;
}

FeatureVector vectorize(const TokenSeq& doc, const Vocabulary& vocab, const FeatureConfig& cfg) {
  if (vocab.kind != cfg.kind)
    throw std::invalid_argument("vocabulary was built for " + to_string(vocab.kind) +
                                " features, requested " + to_string(cfg.kind));
  if (vocab.negation != cfg.negation)
    throw std::invalid_argument("vocabulary negation setting does not match request");

  FeatureVector v;
  v.doc_id = doc.doc_id;
  v.mode = cfg.mode;

  std::unordered_map<uint32_t, uint32_t> counts;
  for (const auto& term : extract_terms(doc, cfg.kind, cfg.negation)) {
    auto it = vocab.index.find(term);
    if (it != vocab.index.end()) ++counts[it->second];
  }

  v.entries.assign(counts.begin(), counts.end());
  std::sort(v.entries.begin(), v.entries.end());
  if (cfg.mode == FeatureMode::Presence)
    for (auto& [id, n] : v.entries) n = 1;
  return v;
}

FeatureVector binarize(const FeatureVector& v) {
  FeatureVector out = v;
  out.mode = FeatureMode::Presence;
  for (auto& [id, n] : out.entries) n = 1;
  return out;
}

std::string format_vector_line(const FeatureVector& v, Polarity label) {
  std::ostringstream out;
  out << (label == Polarity::Pos ? "+1" : "-1");
  for (const auto& [id, n] : v.entries) out << ' ' << id << ':' << n;
  return out.str();
}

std::pair<Polarity, FeatureVector> parse_vector_line(const std::string& line) {
  std::istringstream in(line);
  std::string label;
  if (!(in >> label) || (label != "+1" && label != "-1" && label != "1"))
    throw std::invalid_argument("vector line must start with +1 or -1: '" + line + "'");

  FeatureVector v;
  std::string pair;
  while (in >> pair) {
    auto colon = pair.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size())
      throw std::invalid_argument("malformed id:count pair '" + pair + "'");
    uint32_t id = static_cast<uint32_t>(std::stoul(pair.substr(0, colon)));
    uint32_t n = static_cast<uint32_t>(std::stoul(pair.substr(colon + 1)));
    if (n == 0) throw std::invalid_argument("zero-valued entry in vector line");
    v.entries.emplace_back(id, n);
  }
  std::sort(v.entries.begin(), v.entries.end());
  bool presence = true;
  for (const auto& [id, n] : v.entries)
    if (n != 1) presence = false;
  v.mode = presence ? FeatureMode::Presence : FeatureMode::Frequency;
  return {label == "-1" ? Polarity::Neg : Polarity::Pos, v};
}

}  // namespace polarity
