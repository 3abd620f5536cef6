#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace polarity {

enum class TokenKind : uint8_t { Word, Punct };
enum class Zone : uint8_t { FirstQ, Middle, LastQ };

struct Token {
  std::string surface;  // lowercased
  TokenKind kind = TokenKind::Word;
  std::optional<std::string> pos_tag;
  std::optional<Zone> zone;
  bool negated = false;
};

struct TokenSeq {
  std::string doc_id;
  std::vector<Token> tokens;
};

// Lowercases, splits on whitespace, and detaches each maximal run of
// punctuation characters as its own token. Apostrophes between word
// characters stay inside the word ("isn't" is one token).
TokenSeq tokenize(const std::string& text, std::string doc_id = {});

struct NegationLexicon {
  std::unordered_set<std::string> triggers;

  static NegationLexicon defaults();
  // One trigger per line; '#' starts a comment.
  static NegationLexicon from_file(const std::string& path);
};

// Marks every word strictly after a trigger and strictly before the next
// punctuation token. The trigger itself is not marked; punctuation closes
// the scope.
TokenSeq tag_negation(const TokenSeq& seq, const NegationLexicon& lex = NegationLexicon::defaults());

// Token i of n: FirstQ if i < ceil(n/4), LastQ if i >= n - ceil(n/4)
// (FirstQ wins when both apply), Middle otherwise.
TokenSeq tag_position(const TokenSeq& seq);

struct RenderOpts {
  bool negation = true;
  bool pos = true;
  bool zone = true;
};

// Rendered grammar: [NOT_]surface[_TAG][@F|@M|@L]
std::string render_token(const Token& tok, const RenderOpts& opts = {});
std::string render_seq(const TokenSeq& seq, const RenderOpts& opts = {});

// Parses "surface_TAG" whitespace-separated pre-tagged text. A chunk with no
// underscore gets tag UNK and is counted in *unknown_out if provided.
TokenSeq parse_pretagged(const std::string& text, std::string doc_id = {},
                         size_t* unknown_out = nullptr);

}  // namespace polarity
