#include "polarity/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace polarity {

namespace fs = std::filesystem;

std::string to_string(Classifier clf) {
  switch (clf) {
    case Classifier::NB: return "nb";
    case Classifier::ME: return "me";
    case Classifier::SVM: return "svm";
  }
  return "?";
}

std::vector<AnnotatedDoc> annotate_corpus(const Corpus& corpus, const NegationLexicon& lex,
                                          const PosTagger& tagger, TagStats* stats) {
  std::vector<AnnotatedDoc> out;
  out.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    AnnotatedDoc a;
    a.id = d.id;
    a.label = d.label;
    a.seq = tag_position(tag_pos(tag_negation(tokenize(d.text, d.id), lex), tagger, stats));
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<AnnotatedDoc> annotate_pretagged_corpus(const Corpus& corpus,
                                                    const NegationLexicon& lex,
                                                    size_t* unknown_tags) {
  std::vector<AnnotatedDoc> out;
  out.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    AnnotatedDoc a;
    a.id = d.id;
    a.label = d.label;
    a.seq = tag_position(tag_negation(parse_pretagged(d.text, d.id, unknown_tags), lex));
    out.push_back(std::move(a));
  }
  return out;
}

double accuracy(const std::vector<std::pair<Polarity, Polarity>>& predictions) {
  if (predictions.empty()) throw std::invalid_argument("no predictions to score");
  size_t correct = 0;
  for (const auto& [predicted, actual] : predictions)
    if (predicted == actual) ++correct;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::string format_accuracy(double pct) {
  const double scaled = std::floor(pct * 10.0 + 0.5) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", scaled);
  return buf;
}

void assert_no_leakage(const Vocabulary& vocab, const std::vector<std::string>& test_ids) {
  for (const auto& id : test_ids)
    if (std::binary_search(vocab.train_doc_ids.begin(), vocab.train_doc_ids.end(), id))
      throw std::logic_error("test-set leakage: document '" + id +
                             "' participated in vocabulary construction");
}

namespace {

const AnnotatedDoc& doc_by_id(const std::vector<AnnotatedDoc>& docs,
                              const std::unordered_map<std::string, size_t>& by_id,
                              const std::string& id) {
  auto it = by_id.find(id);
  if (it == by_id.end()) throw std::invalid_argument("fold plan names unknown document: " + id);
  return docs[it->second];
}

std::string write_artifact(const std::string& dir, const std::string& subdir,
                           const std::string& name, const std::string& content) {
  fs::path p = fs::path(dir) / subdir;
  fs::create_directories(p);
  p /= name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write artifact: " + p.string());
  out << content;
  return (fs::path(subdir) / name).string();
}

}  // namespace

CellResult run_cell(const std::vector<AnnotatedDoc>& docs, const FoldPlan& plan,
                    const FeatureConfig& cfg, Classifier clf, const CellOptions& opts,
                    const std::string& tag) {
  CellResult cell;
  if (clf == Classifier::ME && cfg.mode == FeatureMode::Frequency) {
    cell.status = CellStatus::NotApplicable;
    return cell;
  }

  std::unordered_map<std::string, size_t> by_id;
  by_id.reserve(docs.size());
  for (size_t i = 0; i < docs.size(); ++i) by_id.emplace(docs[i].id, i);

  Vocabulary global;
  if (opts.global_vocab) {
    std::vector<TokenSeq> all;
    all.reserve(docs.size());
    for (const auto& d : docs) all.push_back(d.seq);
    global = build_vocabulary(all, cfg);
  }

  const size_t k = plan.folds.size();
  for (size_t f = 0; f < k; ++f) {
    std::vector<const AnnotatedDoc*> train;
    std::vector<const AnnotatedDoc*> test;
    for (size_t g = 0; g < k; ++g)
      for (const auto& id : plan.folds[g])
        (g == f ? test : train).push_back(&doc_by_id(docs, by_id, id));
    if (train.empty() || test.empty())
      throw std::invalid_argument("fold plan leaves an empty train or test split");

    Vocabulary local;
    const Vocabulary& vocab = opts.global_vocab ? global : local;
    if (!opts.global_vocab) {
      std::vector<TokenSeq> train_seqs;
      train_seqs.reserve(train.size());
      for (const auto* d : train) train_seqs.push_back(d->seq);
      local = build_vocabulary(train_seqs, cfg);

      std::vector<std::string> test_ids;
      test_ids.reserve(test.size());
      for (const auto* d : test) test_ids.push_back(d->id);
      assert_no_leakage(vocab, test_ids);
    }
    cell.fold_feature_counts.push_back(vocab.size());

    std::vector<std::pair<FeatureVector, Polarity>> train_vecs;
    train_vecs.reserve(train.size());
    for (const auto* d : train) train_vecs.emplace_back(vectorize(d->seq, vocab, cfg), d->label);

    std::vector<std::pair<Polarity, Polarity>> predictions;
    predictions.reserve(test.size());
    const std::string artifact_base = tag.empty() ? "cell" : tag;
    const std::string fold_name = artifact_base + "_fold" + std::to_string(f + 1);

    switch (clf) {
      case Classifier::NB: {
        NbModel model = nb_train(train_vecs, vocab.size(), vocab.fingerprint());
        for (const auto* d : test)
          predictions.emplace_back(nb_classify(model, vectorize(d->seq, vocab, cfg)).label,
                                   d->label);
        if (!opts.artifact_dir.empty())
          cell.artifacts.push_back(
              write_artifact(opts.artifact_dir, "models", fold_name + ".json", model.to_json()));
        break;
      }
      case Classifier::ME: {
        MaxEntModel model =
            maxent_train(train_vecs, opts.iis, vocab.size(), vocab.fingerprint());
        if (model.bracket_failures > 0)
          cell.warnings.push_back("fold " + std::to_string(f + 1) + ": " +
                                  std::to_string(model.bracket_failures) +
                                  " iis updates skipped (no bracket)");
        for (const auto* d : test)
          predictions.emplace_back(maxent_classify(model, vectorize(d->seq, vocab, cfg)).label,
                                   d->label);
        if (!opts.artifact_dir.empty()) {
          cell.artifacts.push_back(
              write_artifact(opts.artifact_dir, "models", fold_name + ".json", model.to_json()));
          cell.artifacts.push_back(write_artifact(opts.artifact_dir, "logs", fold_name + ".tsv",
                                                  model.training_log_tsv()));
        }
        break;
      }
      case Classifier::SVM: {
        std::vector<SparseVec> train_norm;
        std::vector<int> labels;
        train_norm.reserve(train_vecs.size());
        labels.reserve(train_vecs.size());
        for (const auto& [v, label] : train_vecs) {
          train_norm.push_back(length_normalize(v));
          labels.push_back(label == Polarity::Pos ? 1 : -1);
        }
        SvmModel model = svm_train(train_norm, labels, opts.svm, vocab.size());
        if (!model.converged)
          cell.warnings.push_back("fold " + std::to_string(f + 1) +
                                  ": svm stopped before kkt satisfaction");
        for (const auto* d : test)
          predictions.emplace_back(
              svm_classify(model, length_normalize(vectorize(d->seq, vocab, cfg))), d->label);
        if (!opts.artifact_dir.empty())
          cell.artifacts.push_back(
              write_artifact(opts.artifact_dir, "models", fold_name + ".json", model.to_json()));
        break;
      }
    }
    cell.fold_accuracies.push_back(accuracy(predictions));
  }

  double sum = 0.0;
  for (double a : cell.fold_accuracies) sum += a;
  cell.mean_accuracy = sum / static_cast<double>(cell.fold_accuracies.size());
  cell.status = CellStatus::Ok;
  return cell;
}

std::vector<RowSpec> standard_rows() {
  std::vector<RowSpec> rows;
  auto base = [] {
    FeatureConfig cfg;
    cfg.negation = true;
    return cfg;
  };

  FeatureConfig cfg = base();
  cfg.kind = FeatureKind::Unigram;
  cfg.mode = FeatureMode::Frequency;
  rows.push_back({"unigrams", cfg});

  cfg = base();
  cfg.kind = FeatureKind::Unigram;
  rows.push_back({"unigrams", cfg});

  cfg = base();
  cfg.kind = FeatureKind::UnigramBigram;
  rows.push_back({"unigrams+bigrams", cfg});

  cfg = base();
  cfg.kind = FeatureKind::Bigram;
  rows.push_back({"bigrams", cfg});

  cfg = base();
  cfg.kind = FeatureKind::UnigramPos;
  rows.push_back({"unigrams+POS", cfg});

  cfg = base();
  cfg.kind = FeatureKind::Adjectives;
  rows.push_back({"adjectives", cfg});

  cfg = base();
  cfg.kind = FeatureKind::TopNUnigram;
  cfg.top_n = 2633;
  rows.push_back({"top 2633 unigrams", cfg});

  cfg = base();
  cfg.kind = FeatureKind::UnigramPosition;
  rows.push_back({"unigrams+position", cfg});
  return rows;
}

namespace {

std::string cell_text(const CellResult& c) {
  switch (c.status) {
    case CellStatus::Ok: return format_accuracy(c.mean_accuracy);
    case CellStatus::NotApplicable: return "N/A";
    case CellStatus::Error: return "ERR";
    case CellStatus::Skipped: return "-";
  }
  return "-";
}

char hex_digit(uint64_t v) { return "0123456789abcdef"[v & 0xf]; }

std::string hex64(uint64_t v) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = hex_digit(v);
  return s;
}

}  // namespace

std::string ResultsTable::to_tsv() const {
  std::ostringstream out;
  out << "# seed\t" << seed << '\n';
  out << "# corpus\t" << hex64(corpus_fingerprint) << '\n';
  out << "row\tfeatures\tcount\tmode\tNB\tME\tSVM\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    out << '(' << (r + 1) << ")\t" << row.name << '\t' << row.whole_corpus_features << '\t'
        << to_string(row.cfg.mode);
    for (const auto& cell : row.cells) out << '\t' << cell_text(cell);
    out << '\n';
  }
  return out.str();
}

std::string ResultsTable::to_markdown() const {
  std::ostringstream out;
  out << "| # | Features | Count | Mode | NB | ME | SVM |\n";
  out << "|---|----------|-------|------|----|----|-----|\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    double best = -1.0;
    for (const auto& cell : row.cells)
      if (cell.status == CellStatus::Ok) best = std::max(best, cell.mean_accuracy);
    out << "| (" << (r + 1) << ") | " << row.name << " | " << row.whole_corpus_features << " | "
        << to_string(row.cfg.mode);
    for (const auto& cell : row.cells) {
      out << " | ";
      if (cell.status == CellStatus::Ok && cell.mean_accuracy == best)
        out << "**" << cell_text(cell) << "**";
      else
        out << cell_text(cell);
    }
    out << " |\n";
  }
  return out.str();
}

std::string ResultsTable::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["corpus_fingerprint"] = hex64(corpus_fingerprint);
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    nlohmann::ordered_json rj;
    rj["row"] = r + 1;
    rj["features"] = row.name;
    rj["kind"] = to_string(row.cfg.kind);
    rj["mode"] = to_string(row.cfg.mode);
    rj["negation"] = row.cfg.negation;
    rj["whole_corpus_features"] = row.whole_corpus_features;
    nlohmann::ordered_json cells_json;
    for (size_t c = 0; c < row.cells.size(); ++c) {
      const auto& cell = row.cells[c];
      nlohmann::ordered_json cj;
      switch (cell.status) {
        case CellStatus::Ok: cj["status"] = "ok"; break;
        case CellStatus::NotApplicable: cj["status"] = "n/a"; break;
        case CellStatus::Error: cj["status"] = "error"; break;
        case CellStatus::Skipped: cj["status"] = "skipped"; break;
      }
      if (cell.status == CellStatus::Ok) {
        cj["mean_accuracy"] = cell.mean_accuracy;
        cj["reported"] = format_accuracy(cell.mean_accuracy);
        cj["fold_accuracies"] = cell.fold_accuracies;
        cj["fold_feature_counts"] = cell.fold_feature_counts;
      }
      if (!cell.warnings.empty()) cj["warnings"] = cell.warnings;
      if (!cell.error.empty()) cj["error"] = cell.error;
      if (!cell.artifacts.empty()) cj["artifacts"] = cell.artifacts;
      cells_json[to_string(static_cast<Classifier>(c))] = std::move(cj);
    }
    rj["cells"] = std::move(cells_json);
    rows_json.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows_json);
  return j.dump(2);
}

bool ResultsTable::all_ok() const {
  for (const auto& row : rows)
    for (const auto& cell : row.cells)
      if (cell.status == CellStatus::Error) return false;
  return true;
}

ResultsTable run_table(const std::vector<AnnotatedDoc>& docs, const FoldPlan& plan,
                       uint64_t corpus_fingerprint, const TableOptions& opts) {
  ResultsTable table;
  table.seed = plan.seed;
  table.corpus_fingerprint = corpus_fingerprint;

  auto specs = standard_rows();
  if (opts.no_negation)
    for (auto& s : specs) s.cfg.negation = false;

  std::vector<size_t> row_numbers;  // 1-based original numbering
  for (size_t r = 0; r < specs.size(); ++r) {
    if (opts.only_row && *opts.only_row != r + 1) continue;
    row_numbers.push_back(r + 1);
    RowResult row;
    row.name = specs[r].name;
    row.cfg = specs[r].cfg;
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw std::invalid_argument("row selection matches no row");

  // Whole-corpus vocabulary sizes (the table's feature-count column).
  {
    std::vector<TokenSeq> all;
    all.reserve(docs.size());
    for (const auto& d : docs) all.push_back(d.seq);
    for (auto& row : table.rows) row.whole_corpus_features = build_vocabulary(all, row.cfg).size();
  }

  struct Task {
    size_t row_index;
    Classifier clf;
  };
  std::vector<Task> tasks;
  for (size_t r = 0; r < table.rows.size(); ++r)
    for (Classifier clf : {Classifier::NB, Classifier::ME, Classifier::SVM}) {
      if (opts.only_clf && *opts.only_clf != clf) continue;
      tasks.push_back({r, clf});
    }

  if (!opts.cell.artifact_dir.empty()) {
    fs::create_directories(fs::path(opts.cell.artifact_dir) / "models");
    fs::create_directories(fs::path(opts.cell.artifact_dir) / "logs");
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      RowResult& row = table.rows[task.row_index];
      CellResult& cell = row.cells[static_cast<size_t>(task.clf)];
      const std::string tag =
          "row" + std::to_string(row_numbers[task.row_index]) + "_" + to_string(task.clf);
      try {
        cell = run_cell(docs, plan, row.cfg, task.clf, opts.cell, tag);
      } catch (const std::exception& e) {
        cell = CellResult{};
        cell.status = CellStatus::Error;
        cell.error = e.what();
      }
    }
  };

  const size_t jobs = std::max<size_t>(1, std::min(opts.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return table;
}

}  // namespace polarity
