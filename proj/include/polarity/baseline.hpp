#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polarity/corpus.hpp"
#include "polarity/text.hpp"

namespace polarity {

// Counting classifier over hand-picked phrase lists.
struct WordList {
  std::string name;
  std::vector<std::string> positive;
  std::vector<std::string> negative;

  // `[positive]` / `[negative]` section headers, one phrase per line,
  // '#' comments. Lists must end up non-empty and disjoint.
  static WordList from_file(const std::string& path);
  // Bundled lists: "human1", "human2", "human3".
  static WordList builtin(const std::string& name);
  static std::vector<std::string> builtin_names();
};

enum class CountVerdict : uint8_t { Pos, Neg, Tie };
enum class TiePolicy : uint8_t { AllPos, AllNeg };

struct CountResult {
  CountVerdict verdict = CountVerdict::Tie;
  size_t positive_hits = 0;
  size_t negative_hits = 0;
};

// Counts list-phrase occurrences over raw token surfaces (no transforms);
// multi-word phrases match as contiguous token runs.
CountResult count_decide(const TokenSeq& doc, const WordList& wl);

struct BaselineReport {
  std::string list_name;
  double accuracy = 0.0;  // percent, under the better tie policy
  double tie_rate = 0.0;  // percent, policy-independent
  TiePolicy tie_policy_chosen = TiePolicy::AllPos;
  size_t total = 0;
  size_t ties = 0;
  size_t decided_correct = 0;     // correct among non-tied documents
  size_t tied_pos_labels = 0;     // tied documents whose true label is Pos
  double accuracy_all_pos = 0.0;  // percent under each fixed policy
  double accuracy_all_neg = 0.0;

  std::string to_json() const;
};

BaselineReport evaluate_baseline(const std::vector<std::pair<TokenSeq, Polarity>>& docs,
                                 const WordList& wl);

}  // namespace polarity
