#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarity/baseline.hpp"
#include "polarity/corpus.hpp"
#include "polarity/features.hpp"
#include "polarity/maxent.hpp"
#include "polarity/nb.hpp"
#include "polarity/postag.hpp"
#include "polarity/svm.hpp"
#include "polarity/text.hpp"

namespace polarity {

enum class Classifier : uint8_t { NB = 0, ME = 1, SVM = 2 };

std::string to_string(Classifier clf);

struct AnnotatedDoc {
  std::string id;
  Polarity label = Polarity::Pos;
  TokenSeq seq;  // carries negation, POS, and position annotations together
};

// Tokenize and apply all three transforms; feature extraction later picks
// the annotations each configuration renders.
std::vector<AnnotatedDoc> annotate_corpus(const Corpus& corpus, const NegationLexicon& lex,
                                          const PosTagger& tagger, TagStats* stats = nullptr);

// For corpora stored as pre-tagged text (surface_TAG chunks).
std::vector<AnnotatedDoc> annotate_pretagged_corpus(const Corpus& corpus,
                                                    const NegationLexicon& lex,
                                                    size_t* unknown_tags = nullptr);

// percentage of (predicted, actual) pairs that agree
double accuracy(const std::vector<std::pair<Polarity, Polarity>>& predictions);

// One decimal, round half up: 81.25 -> "81.3".
std::string format_accuracy(double pct);

// Throws if any test id appears in the vocabulary's training-id set.
void assert_no_leakage(const Vocabulary& vocab, const std::vector<std::string>& test_ids);

enum class CellStatus : uint8_t { Skipped, Ok, NotApplicable, Error };

struct CellResult {
  CellStatus status = CellStatus::Skipped;
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
  std::vector<size_t> fold_feature_counts;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;  // files written under the artifact dir
  std::string error;
};

struct CellOptions {
  IisConfig iis;
  SvmConfig svm;
  bool global_vocab = false;   // build one vocabulary over all documents
  std::string artifact_dir;    // when set, models/ and logs/ are written here
};

// Cross-validates one feature-config x classifier cell over the fold plan.
// `tag` names artifact files (e.g. "row2_svm"). ME with frequency vectors
// reports NotApplicable.
CellResult run_cell(const std::vector<AnnotatedDoc>& docs, const FoldPlan& plan,
                    const FeatureConfig& cfg, Classifier clf, const CellOptions& opts,
                    const std::string& tag = {});

struct RowSpec {
  std::string name;
  FeatureConfig cfg;
};

// The eight standard feature configurations, in presentation order.
std::vector<RowSpec> standard_rows();

struct RowResult {
  std::string name;
  FeatureConfig cfg;
  size_t whole_corpus_features = 0;
  std::array<CellResult, 3> cells;  // indexed by Classifier
};

struct ResultsTable {
  uint64_t seed = 0;
  uint64_t corpus_fingerprint = 0;
  std::vector<RowResult> rows;

  std::string to_tsv() const;
  std::string to_json() const;
  std::string to_markdown() const;  // best accuracy per row in bold
  bool all_ok() const;              // no Error cells
};

struct TableOptions {
  CellOptions cell;
  size_t jobs = 1;
  std::optional<size_t> only_row;  // 1-based row number
  std::optional<Classifier> only_clf;
  bool no_negation = false;
};

ResultsTable run_table(const std::vector<AnnotatedDoc>& docs, const FoldPlan& plan,
                       uint64_t corpus_fingerprint, const TableOptions& opts);

}  // namespace polarity
