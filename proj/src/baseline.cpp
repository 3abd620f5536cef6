#include "polarity/baseline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace polarity {

namespace {

void validate(const WordList& wl) {
  if (wl.positive.empty() || wl.negative.empty())
    throw std::invalid_argument("word list '" + wl.name +
                                "' must have both positive and negative entries");
  std::unordered_set<std::string> pos(wl.positive.begin(), wl.positive.end());
  for (const auto& p : wl.negative)
    if (pos.count(p))
      throw std::invalid_argument("word list '" + wl.name + "' repeats '" + p +
                                  "' on both sides");
}

}  // namespace

WordList WordList::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list: " + path);

  WordList wl;
  wl.name = path;
  std::vector<std::string>* section = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string item = line.substr(first, last - first + 1);
    if (item == "[positive]") {
      section = &wl.positive;
    } else if (item == "[negative]") {
      section = &wl.negative;
    } else if (!section) {
      throw std::runtime_error("word list " + path + ": entry '" + item +
                               "' before any [positive]/[negative] header");
    } else {
      std::transform(item.begin(), item.end(), item.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      section->push_back(item);
    }
  }
  validate(wl);
  return wl;
}

WordList WordList::builtin(const std::string& name) {
  WordList wl;
  wl.name = name;
  if (name == "human1") {
    wl.positive = {"dazzling", "brilliant", "phenomenal", "excellent", "fantastic"};
    wl.negative = {"suck", "terrible", "awful", "unwatchable", "hideous"};
  } else if (name == "human2") {
    wl.positive = {"gripping", "mesmerizing", "riveting", "spectacular", "cool", "awesome",
                   "thrilling", "badass", "excellent", "moving", "exciting"};
    wl.negative = {"bad", "cliched", "sucks", "boring", "stupid", "slow"};
  } else if (name == "human3") {
    wl.positive = {"love", "wonderful", "best", "great", "superb", "still", "beautiful"};
    wl.negative = {"bad", "worst", "stupid", "waste", "boring", "?", "!"};
  } else {
    throw std::invalid_argument("unknown built-in word list: " + name);
  }
  validate(wl);
  return wl;
}

std::vector<std::string> WordList::builtin_names() { return {"human1", "human2", "human3"}; }

namespace {

// A phrase is matched as its tokenized form, so "really stinks" is the
// two-token run [really][stinks] and "?" matches the punctuation token.
std::vector<std::vector<std::string>> tokenize_phrases(const std::vector<std::string>& phrases) {
  std::vector<std::vector<std::string>> out;
  out.reserve(phrases.size());
  for (const auto& p : phrases) {
    std::vector<std::string> surfaces;
    for (const auto& tok : tokenize(p).tokens) surfaces.push_back(tok.surface);
    if (!surfaces.empty()) out.push_back(std::move(surfaces));
  }
  return out;
}

size_t count_hits(const std::vector<std::string>& surfaces,
                  const std::vector<std::vector<std::string>>& phrases) {
  size_t hits = 0;
  for (const auto& phrase : phrases) {
    if (phrase.size() > surfaces.size()) continue;
    for (size_t start = 0; start + phrase.size() <= surfaces.size(); ++start) {
      bool match = true;
      for (size_t k = 0; k < phrase.size(); ++k)
        if (surfaces[start + k] != phrase[k]) {
          match = false;
          break;
        }
      if (match) ++hits;
    }
  }
  return hits;
}

}  // namespace

CountResult count_decide(const TokenSeq& doc, const WordList& wl) {
  std::vector<std::string> surfaces;
  surfaces.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) surfaces.push_back(tok.surface);

  CountResult r;
  r.positive_hits = count_hits(surfaces, tokenize_phrases(wl.positive));
  r.negative_hits = count_hits(surfaces, tokenize_phrases(wl.negative));
  if (r.positive_hits > r.negative_hits)
    r.verdict = CountVerdict::Pos;
  else if (r.positive_hits < r.negative_hits)
    r.verdict = CountVerdict::Neg;
  else
    r.verdict = CountVerdict::Tie;
  return r;
}

BaselineReport evaluate_baseline(const std::vector<std::pair<TokenSeq, Polarity>>& docs,
                                 const WordList& wl) {
  if (docs.empty()) throw std::invalid_argument("no documents to evaluate");

  BaselineReport rep;
  rep.list_name = wl.name;
  rep.total = docs.size();

  const auto pos_phrases = tokenize_phrases(wl.positive);
  const auto neg_phrases = tokenize_phrases(wl.negative);
  for (const auto& [doc, label] : docs) {
    std::vector<std::string> surfaces;
    surfaces.reserve(doc.tokens.size());
    for (const auto& tok : doc.tokens) surfaces.push_back(tok.surface);
    const size_t p = count_hits(surfaces, pos_phrases);
    const size_t q = count_hits(surfaces, neg_phrases);
    if (p == q) {
      ++rep.ties;
      if (label == Polarity::Pos) ++rep.tied_pos_labels;
    } else if ((p > q) == (label == Polarity::Pos)) {
      ++rep.decided_correct;
    }
  }

  const double total = static_cast<double>(rep.total);
  const size_t correct_all_pos = rep.decided_correct + rep.tied_pos_labels;
  const size_t correct_all_neg = rep.decided_correct + (rep.ties - rep.tied_pos_labels);
  rep.accuracy_all_pos = 100.0 * static_cast<double>(correct_all_pos) / total;
  rep.accuracy_all_neg = 100.0 * static_cast<double>(correct_all_neg) / total;
  if (rep.accuracy_all_pos >= rep.accuracy_all_neg) {
    rep.tie_policy_chosen = TiePolicy::AllPos;
    rep.accuracy = rep.accuracy_all_pos;
  } else {
    rep.tie_policy_chosen = TiePolicy::AllNeg;
    rep.accuracy = rep.accuracy_all_neg;
  }
  rep.tie_rate = 100.0 * static_cast<double>(rep.ties) / total;
  return rep;
}

std::string BaselineReport::to_json() const {
  nlohmann::ordered_json j;
  j["list"] = list_name;
  j["accuracy"] = accuracy;
  j["tie_rate"] = tie_rate;
  j["tie_policy"] = tie_policy_chosen == TiePolicy::AllPos ? "all-pos" : "all-neg";
  j["total"] = total;
  j["ties"] = ties;
  j["decided_correct"] = decided_correct;
  j["tied_pos_labels"] = tied_pos_labels;
  j["accuracy_all_pos"] = accuracy_all_pos;
  j["accuracy_all_neg"] = accuracy_all_neg;
  return j.dump(2);
}

}  // namespace polarity
