#include "polarity/text.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace polarity {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_space_char(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

TokenSeq tokenize(const std::string& text, std::string doc_id) {
  TokenSeq seq;
  seq.doc_id = std::move(doc_id);

  std::string word;
  std::string punct;
  auto flush_word = [&] {
    if (!word.empty()) {
      seq.tokens.push_back({std::move(word), TokenKind::Word, {}, {}, false});
      word.clear();
    }
  };
  auto flush_punct = [&] {
    if (!punct.empty()) {
      seq.tokens.push_back({std::move(punct), TokenKind::Punct, {}, {}, false});
      punct.clear();
    }
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_space_char(c)) {
      flush_word();
      flush_punct();
    } else if (is_word_char(c) || static_cast<unsigned char>(c) >= 0x80) {
      flush_punct();
      word.push_back(lower(c));
    } else if (c == '\'' && !word.empty() && i + 1 < text.size() && is_word_char(text[i + 1])) {
      word.push_back(c);
    } else {
      flush_word();
      punct.push_back(c);
    }
  }
  flush_word();
  flush_punct();
  return seq;
}

NegationLexicon NegationLexicon::defaults() {
  return {{"not",   "isn't",   "aren't",  "wasn't",    "weren't", "don't", "doesn't",
           "didn't", "can't",  "cannot",  "couldn't",  "won't",   "wouldn't",
           "shouldn't", "never", "no",    "nothing",   "nowhere", "neither", "nor"}};
}

NegationLexicon NegationLexicon::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open negation lexicon: " + path);
  NegationLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    lex.triggers.insert(line.substr(begin, end - begin + 1));
  }
  if (lex.triggers.empty()) throw std::runtime_error("negation lexicon is empty: " + path);
  return lex;
}

TokenSeq tag_negation(const TokenSeq& seq, const NegationLexicon& lex) {
  TokenSeq out = seq;
  bool in_scope = false;
  for (auto& tok : out.tokens) {
    if (tok.kind == TokenKind::Punct) {
      in_scope = false;
      continue;
    }
    if (in_scope) tok.negated = true;
    if (lex.triggers.count(tok.surface)) in_scope = true;
  }
  return out;
}

TokenSeq tag_position(const TokenSeq& seq) {
  TokenSeq out = seq;
  size_t n = out.tokens.size();
  if (n == 0) return out;
  size_t q = (n + 3) / 4;  // ceil(n/4)
  for (size_t i = 0; i < n; ++i) {
    if (i < q)
      out.tokens[i].zone = Zone::FirstQ;
    else if (i >= n - q)
      out.tokens[i].zone = Zone::LastQ;
    else
      out.tokens[i].zone = Zone::Middle;
  }
  return out;
}

std::string render_token(const Token& tok, const RenderOpts& opts) {
  std::string out;
  if (opts.negation && tok.negated && tok.kind == TokenKind::Word) out += "NOT_";
  out += tok.surface;
  if (opts.pos && tok.pos_tag && tok.kind == TokenKind::Word) {
    out += '_';
    out += *tok.pos_tag;
  }
  if (opts.zone && tok.zone) {
    switch (*tok.zone) {
      case Zone::FirstQ: out += "@F"; break;
      case Zone::Middle: out += "@M"; break;
      case Zone::LastQ: out += "@L"; break;
    }
  }
  return out;
}

std::string render_seq(const TokenSeq& seq, const RenderOpts& opts) {
  std::string out;
  for (size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i) out += ' ';
    out += render_token(seq.tokens[i], opts);
  }
  return out;
}

TokenSeq parse_pretagged(const std::string& text, std::string doc_id, size_t* unknown_out) {
  TokenSeq seq;
  seq.doc_id = std::move(doc_id);
  size_t unknown = 0;

  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space_char(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_space_char(text[i])) ++i;
    if (i == start) break;
    std::string chunk = text.substr(start, i - start);

    std::string surface, tag;
    size_t us = chunk.rfind('_');
    if (us == std::string::npos || us == 0 || us == chunk.size() - 1) {
      surface = chunk;
      tag = "UNK";
      ++unknown;
    } else {
      surface = chunk.substr(0, us);
      tag = chunk.substr(us + 1);
    }
    for (char& c : surface) c = lower(c);

    bool all_punct = !surface.empty();
    for (char c : surface) {
      if (is_word_char(c) || static_cast<unsigned char>(c) >= 0x80) {
        all_punct = false;
        break;
      }
    }

    Token tok;
    tok.surface = std::move(surface);
    tok.kind = all_punct ? TokenKind::Punct : TokenKind::Word;
    if (tok.kind == TokenKind::Word) tok.pos_tag = std::move(tag);
    seq.tokens.push_back(std::move(tok));
  }
  if (unknown_out) *unknown_out = unknown;
  return seq;
}

}  // namespace polarity
