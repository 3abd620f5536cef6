#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "polarity/text.hpp"

namespace polarity {

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  // prev_surface/prev_tag refer to the immediately preceding word token, or
  // are empty at sequence start and after punctuation. nullopt means the
  // tagger cannot decide; the caller substitutes UNK.
  virtual std::optional<std::string> tag(std::string_view surface,
                                         std::string_view prev_surface,
                                         std::string_view prev_tag) const = 0;
};

struct TagStats {
  size_t words = 0;
  size_t unknown = 0;
};

// Fills pos_tag on every word token. Tagger failures become "UNK" and are
// counted in stats.
TokenSeq tag_pos(const TokenSeq& seq, const PosTagger& tagger, TagStats* stats = nullptr);

// Lexicon + suffix-rule tagger over the Penn tagset. Closed-class words and
// common review vocabulary come from a built-in table; unknown words fall
// through ordered suffix rules; anything left is a failure (UNK).
class BuiltinTagger : public PosTagger {
 public:
  BuiltinTagger();

  std::optional<std::string> tag(std::string_view surface, std::string_view prev_surface,
                                 std::string_view prev_tag) const override;

 private:
  std::unordered_map<std::string, std::string> lexicon_;
  std::unordered_set<std::string> noun_verb_ambiguous_;
};

}  // namespace polarity
