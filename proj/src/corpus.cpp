#include "polarity/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "polarity/diag.hpp"
#include "polarity/hash.hpp"

namespace polarity {

namespace fs = std::filesystem;

size_t Corpus::count(Polarity label) const {
  size_t n = 0;
  for (const auto& d : documents)
    if (d.label == label) ++n;
  return n;
}

const Document* Corpus::find(const std::string& id) const {
  for (const auto& d : documents)
    if (d.id == id) return &d;
  return nullptr;
}

std::map<std::pair<std::string, Polarity>, size_t> Corpus::author_label_counts() const {
  std::map<std::pair<std::string, Polarity>, size_t> counts;
  for (const auto& d : documents) ++counts[{d.author, d.label}];
  return counts;
}

namespace {

void append_codepoint(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes &amp; &lt; &gt; &quot; &apos; and numeric &#NN; / &#xNN; forms.
// Unknown entities are left verbatim. Returns chars consumed past '&'.
size_t decode_entity(const std::string& s, size_t amp, std::string& out) {
  size_t semi = s.find(';', amp + 1);
  if (semi == std::string::npos || semi - amp > 10) {
    out.push_back('&');
    return 1;
  }
  std::string name = s.substr(amp + 1, semi - amp - 1);
  if (name == "amp") {
    out.push_back('&');
  } else if (name == "lt") {
    out.push_back('<');
  } else if (name == "gt") {
    out.push_back('>');
  } else if (name == "quot") {
    out.push_back('"');
  } else if (name == "apos") {
    out.push_back('\'');
  } else if (name.size() > 1 && name[0] == '#') {
    uint32_t cp = 0;
    bool ok = true;
    if (name[1] == 'x' || name[1] == 'X') {
      ok = name.size() > 2;
      for (size_t i = 2; i < name.size() && ok; ++i) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(name[i])));
        if (c >= '0' && c <= '9')
          cp = cp * 16 + static_cast<uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f')
          cp = cp * 16 + static_cast<uint32_t>(c - 'a' + 10);
        else
          ok = false;
      }
    } else {
      for (size_t i = 1; i < name.size() && ok; ++i) {
        if (name[i] >= '0' && name[i] <= '9')
          cp = cp * 10 + static_cast<uint32_t>(name[i] - '0');
        else
          ok = false;
      }
    }
    if (!ok || cp == 0 || cp > 0x10FFFF) {
      out.push_back('&');
      return 1;
    }
    append_codepoint(out, cp);
  } else {
    out.push_back('&');
    return 1;
  }
  return semi - amp + 1;
}

}  // namespace

std::string strip_html(const std::string& raw) {
  std::string detagged;
  detagged.reserve(raw.size());
  size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '<') {
      size_t close = raw.find('>', i + 1);
      if (close == std::string::npos) {
        diag::warn("strip_html: dropping unterminated '<' span");
        break;
      }
      i = close + 1;
      continue;
    }
    if (c == '&') {
      i += decode_entity(raw, i, detagged);
      continue;
    }
    detagged.push_back(c);
    ++i;
  }

  std::string out;
  out.reserve(detagged.size());
  bool pending_space = false;
  for (char c : detagged) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

namespace {

std::unordered_map<std::string, std::string> load_author_map(const fs::path& path) {
  std::unordered_map<std::string, std::string> map;
  std::ifstream in(path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      diag::warn("authors.tsv line " + std::to_string(lineno) + ": no tab separator, skipped");
      continue;
    }
    map[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return map;
}

}  // namespace

Corpus load_corpus(const fs::path& root, const LoadOptions& opts) {
  Corpus corpus;

  const std::pair<const char*, Polarity> dirs[] = {{"pos", Polarity::Pos}, {"neg", Polarity::Neg}};
  for (const auto& [name, label] : dirs) {
    if (!fs::is_directory(root / name))
      throw std::runtime_error("corpus root missing required directory: " + (root / name).string());
    (void)label;
  }

  std::unordered_map<std::string, std::string> authors;
  fs::path author_path = root / "authors.tsv";
  if (fs::is_regular_file(author_path)) {
    corpus.has_author_map = true;
    authors = load_author_map(author_path);
  }

  for (const auto& [name, label] : dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root / name)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        diag::warn("unreadable file skipped: " + path.string());
        ++corpus.skipped_files;
        continue;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      std::string text = buf.str();
      if (opts.strip_html) text = strip_html(text);
      if (text.empty()) {
        diag::warn("empty document skipped: " + path.string());
        ++corpus.skipped_files;
        continue;
      }

      Document doc;
      doc.id = std::string(name) + "/" + path.filename().string();
      doc.label = label;
      doc.text = std::move(text);

      auto it = authors.find(doc.id);
      if (it == authors.end()) it = authors.find(path.filename().string());
      doc.author = it != authors.end() ? it->second : "unknown";
      corpus.documents.push_back(std::move(doc));
    }
  }

  if (corpus.skipped_files > 0)
    diag::warn("load_corpus: skipped " + std::to_string(corpus.skipped_files) + " file(s)");
  return corpus;
}

Corpus apply_author_cap(const Corpus& corpus, size_t cap) {
  if (cap < 1) throw std::invalid_argument("apply_author_cap: cap must be >= 1");

  std::map<std::pair<std::string, Polarity>, std::vector<const Document*>> groups;
  for (const auto& d : corpus.documents) groups[{d.author, d.label}].push_back(&d);

  std::vector<const Document*> kept;
  for (auto& [key, docs] : groups) {
    std::sort(docs.begin(), docs.end(),
              [](const Document* a, const Document* b) { return a->id < b->id; });
    size_t keep = std::min(docs.size(), cap - 1);
    for (size_t i = 0; i < keep; ++i) kept.push_back(docs[i]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });

  Corpus out;
  out.has_author_map = corpus.has_author_map;
  out.skipped_files = corpus.skipped_files;
  out.documents.reserve(kept.size());
  for (const Document* d : kept) out.documents.push_back(*d);
  return out;
}

namespace {

// Fisher-Yates driven directly by mt19937 output so plans are identical
// across standard libraries (std::shuffle is not portable).
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    uint64_t r = rng();
    std::swap(v[i - 1], v[r % i]);
  }
}

}  // namespace

FoldPlan make_folds(const Corpus& corpus, size_t n_per_class, size_t k, uint64_t seed) {
  if (k < 1) throw std::invalid_argument("make_folds: k must be >= 1");

  std::vector<std::string> ids[2];
  for (const auto& d : corpus.documents) ids[class_index(d.label)].push_back(d.id);
  for (auto& v : ids) std::sort(v.begin(), v.end());

  for (int c = 0; c < 2; ++c) {
    if (ids[c].size() < n_per_class) {
      Polarity p = c == 0 ? Polarity::Pos : Polarity::Neg;
      throw std::runtime_error(
          "make_folds: need " + std::to_string(n_per_class) + " " + to_string(p) +
          " documents, have " + std::to_string(ids[c].size()) + " (short by " +
          std::to_string(n_per_class - ids[c].size()) + ")");
    }
  }

  std::mt19937_64 rng(seed);
  FoldPlan plan;
  plan.seed = seed;
  plan.folds.assign(k, {});

  for (int c = 0; c < 2; ++c) {
    seeded_shuffle(ids[c], rng);
    // Staggered round-robin start per class keeps total fold sizes within 1.
    for (size_t j = 0; j < n_per_class; ++j)
      plan.folds[(j + static_cast<size_t>(c)) % k].push_back(ids[c][j]);
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

std::string FoldPlan::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["folds"] = folds;
  return j.dump(2);
}

FoldPlan FoldPlan::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  FoldPlan plan;
  plan.seed = j.at("seed").get<uint64_t>();
  plan.folds = j.at("folds").get<std::vector<std::vector<std::string>>>();
  return plan;
}

uint64_t corpus_fingerprint(const Corpus& corpus) {
  std::vector<std::pair<std::string, uint64_t>> digests;
  digests.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) digests.emplace_back(d.id, fnv1a(d.text));
  std::sort(digests.begin(), digests.end());

  uint64_t h = 1469598103934665603ULL;
  for (const auto& [id, digest] : digests) {
    h = fnv1a(id, h);
    h = fnv1a_u64(digest, h);
  }
  return h;
}

}  // namespace polarity
