#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"
#include "polarity/baseline.hpp"
#include "polarity/corpus.hpp"
#include "polarity/diag.hpp"
#include "polarity/eval.hpp"
#include "polarity/postag.hpp"
#include "polarity/text.hpp"

namespace fs = std::filesystem;
using namespace polarity;

namespace {

struct RunConfig {
  std::string corpus_root;
  uint64_t seed = 2002;
  std::string out_dir;
  size_t cap = 20;
  size_t folds = 3;
  size_t n_per_class = 700;
  std::optional<size_t> row;
  std::string clf = "all";
  size_t jobs = 1;
  bool global_vocab = false;
  bool no_negation = false;
  bool markdown = false;
  std::string tagger = "builtin";
  std::string negation_lexicon;
  double sigma2 = 1.0;
  size_t iterations = 10;
  double svm_c = 1.0;
};

std::string describe(const RunConfig& cfg, const std::string& command) {
  std::ostringstream out;
  out << "command=" << command << '\n';
  out << "corpus=" << cfg.corpus_root << '\n';
  out << "seed=" << cfg.seed << '\n';
  out << "cap=" << cfg.cap << '\n';
  out << "folds=" << cfg.folds << '\n';
  out << "n-per-class=" << cfg.n_per_class << '\n';
  out << "row=" << (cfg.row ? std::to_string(*cfg.row) : std::string("all")) << '\n';
  out << "clf=" << cfg.clf << '\n';
  out << "jobs=" << cfg.jobs << '\n';
  out << "global-vocab=" << (cfg.global_vocab ? "true" : "false") << '\n';
  out << "no-negation=" << (cfg.no_negation ? "true" : "false") << '\n';
  out << "tagger=" << cfg.tagger << '\n';
  out << "negation-lexicon=" << (cfg.negation_lexicon.empty() ? "builtin" : cfg.negation_lexicon)
      << '\n';
  out << "sigma2=" << cfg.sigma2 << '\n';
  out << "iterations=" << cfg.iterations << '\n';
  out << "svm-c=" << cfg.svm_c << '\n';
  return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

Corpus load_and_cap(const RunConfig& cfg) {
  Corpus corpus = load_corpus(cfg.corpus_root);
  if (cfg.cap > 0 && corpus.has_author_map) corpus = apply_author_cap(corpus, cfg.cap);
  return corpus;
}

size_t effective_n_per_class(const Corpus& corpus, size_t requested) {
  if (requested > 0) return requested;
  return std::min(corpus.count(Polarity::Pos), corpus.count(Polarity::Neg));
}

std::vector<AnnotatedDoc> annotate(const Corpus& corpus, const RunConfig& cfg,
                                   TagStats* stats = nullptr, size_t* unknown = nullptr) {
  NegationLexicon lex = cfg.negation_lexicon.empty()
                            ? NegationLexicon::defaults()
                            : NegationLexicon::from_file(cfg.negation_lexicon);
  if (cfg.tagger == "pretagged") return annotate_pretagged_corpus(corpus, lex, unknown);
  BuiltinTagger tagger;
  return annotate_corpus(corpus, lex, tagger, stats);
}

int cmd_prepare(const RunConfig& cfg) {
  Corpus corpus = load_corpus(cfg.corpus_root);
  const size_t loaded_pos = corpus.count(Polarity::Pos);
  const size_t loaded_neg = corpus.count(Polarity::Neg);
  size_t removed = 0;
  if (cfg.cap > 0 && corpus.has_author_map) {
    Corpus capped = apply_author_cap(corpus, cfg.cap);
    removed = corpus.documents.size() - capped.documents.size();
    corpus = std::move(capped);
  }

  TagStats stats;
  size_t unknown_pretagged = 0;
  size_t tokens = 0;
  for (const auto& d : annotate(corpus, cfg, &stats, &unknown_pretagged))
    tokens += d.seq.tokens.size();

  nlohmann::ordered_json j;
  j["corpus"] = cfg.corpus_root;
  j["documents"] = corpus.documents.size();
  j["pos"] = corpus.count(Polarity::Pos);
  j["neg"] = corpus.count(Polarity::Neg);
  j["loaded_pos"] = loaded_pos;
  j["loaded_neg"] = loaded_neg;
  j["skipped_files"] = corpus.skipped_files;
  j["author_map"] = corpus.has_author_map;
  j["author_cap"] = cfg.cap;
  j["author_cap_removed"] = removed;
  j["tokens"] = tokens;
  if (cfg.tagger == "pretagged")
    j["unknown_tags"] = unknown_pretagged;
  else
    j["unknown_tags"] = stats.unknown;
  j["tagged_words"] = stats.words;
  j["fingerprint"] = corpus_fingerprint(corpus);

  const std::string report = j.dump(2);
  std::cout << report << '\n';
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "corpus_report.json", report + "\n");
    write_file(fs::path(cfg.out_dir) / "resolved_config.txt", describe(cfg, "prepare"));
  }
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  Corpus corpus = load_and_cap(cfg);
  const size_t n = effective_n_per_class(corpus, cfg.n_per_class);
  FoldPlan plan = make_folds(corpus, n, cfg.folds, cfg.seed);
  std::vector<AnnotatedDoc> docs = annotate(corpus, cfg);

  // Restrict to the selected documents.
  {
    std::unordered_set<std::string> selected;
    for (const auto& fold : plan.folds) selected.insert(fold.begin(), fold.end());
    std::vector<AnnotatedDoc> kept;
    kept.reserve(selected.size());
    for (auto& d : docs)
      if (selected.count(d.id)) kept.push_back(std::move(d));
    docs = std::move(kept);
  }

  TableOptions opts;
  opts.cell.iis.iterations = cfg.iterations;
  opts.cell.iis.gaussian_sigma2 = cfg.sigma2;
  opts.cell.svm.C = cfg.svm_c;
  opts.cell.global_vocab = cfg.global_vocab;
  opts.jobs = cfg.jobs;
  opts.no_negation = cfg.no_negation;
  opts.only_row = cfg.row;
  if (cfg.clf == "nb")
    opts.only_clf = Classifier::NB;
  else if (cfg.clf == "me")
    opts.only_clf = Classifier::ME;
  else if (cfg.clf == "svm")
    opts.only_clf = Classifier::SVM;
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    opts.cell.artifact_dir = cfg.out_dir;
  }

  ResultsTable table = run_table(docs, plan, corpus_fingerprint(corpus), opts);

  const std::string tsv = table.to_tsv();
  std::cout << tsv;
  if (cfg.markdown) std::cout << '\n' << table.to_markdown();

  if (!cfg.out_dir.empty()) {
    write_file(fs::path(cfg.out_dir) / "results.tsv", tsv);
    auto j = nlohmann::ordered_json::parse(table.to_json());
    auto config_json = nlohmann::ordered_json::object();
    std::istringstream lines(describe(cfg, "run"));
    std::string line;
    while (std::getline(lines, line)) {
      auto eq = line.find('=');
      if (eq != std::string::npos) config_json[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["config"] = std::move(config_json);
    write_file(fs::path(cfg.out_dir) / "results.json", j.dump(2) + "\n");
    if (cfg.markdown) write_file(fs::path(cfg.out_dir) / "results.md", table.to_markdown());
    write_file(fs::path(cfg.out_dir) / "fold_plan.json", plan.to_json() + "\n");
    write_file(fs::path(cfg.out_dir) / "resolved_config.txt", describe(cfg, "run"));
  }
  return table.all_ok() ? 0 : 1;
}

int cmd_baseline(const RunConfig& cfg, const std::string& list_name) {
  Corpus corpus = load_and_cap(cfg);
  if (corpus.count(Polarity::Pos) != corpus.count(Polarity::Neg))
    diag::warn("baseline: corpus is unbalanced (" + std::to_string(corpus.count(Polarity::Pos)) +
               " pos vs " + std::to_string(corpus.count(Polarity::Neg)) + " neg)");

  WordList wl;
  bool is_builtin = false;
  for (const auto& name : WordList::builtin_names())
    if (name == list_name) is_builtin = true;
  wl = is_builtin ? WordList::builtin(list_name) : WordList::from_file(list_name);

  std::vector<std::pair<TokenSeq, Polarity>> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) docs.emplace_back(tokenize(d.text, d.id), d.label);

  BaselineReport report = evaluate_baseline(docs, wl);
  std::cout << "list\t" << report.list_name << '\n';
  std::cout << "accuracy\t" << format_accuracy(report.accuracy) << '\n';
  std::cout << "ties\t" << format_accuracy(report.tie_rate) << '\n';
  std::cout << "tie-policy\t"
            << (report.tie_policy_chosen == TiePolicy::AllPos ? "all-pos" : "all-neg") << '\n';

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    std::string stem = is_builtin ? list_name : fs::path(list_name).stem().string();
    write_file(fs::path(cfg.out_dir) / ("baseline_" + stem + ".json"), report.to_json() + "\n");
    write_file(fs::path(cfg.out_dir) / "resolved_config.txt", describe(cfg, "baseline"));
  }
  return 0;
}

int cmd_inspect(const std::string& model_path) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open model: " << model_path << '\n';
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str());
  const std::string type = j.value("type", "unknown");
  std::cout << "type\t" << type << '\n';
  if (type == "naive-bayes") {
    std::cout << "vocab_size\t" << j.at("vocab_size").get<size_t>() << '\n';
    std::cout << "log_prior_pos\t" << j.at("log_prior").at("pos").get<double>() << '\n';
    std::cout << "log_prior_neg\t" << j.at("log_prior").at("neg").get<double>() << '\n';
  } else if (type == "maxent") {
    std::cout << "vocab_size\t" << j.at("vocab_size").get<size_t>() << '\n';
    const auto& log = j.at("training_log");
    std::cout << "iterations\t" << log.size() << '\n';
    if (!log.empty()) {
      std::cout << "final_penalized_ll\t" << log.back().at("penalized_ll").get<double>() << '\n';
      std::cout << "final_train_accuracy\t" << log.back().at("train_accuracy").get<double>()
                << '\n';
    }
    std::cout << "bracket_failures\t" << j.at("bracket_failures").get<size_t>() << '\n';
  } else if (type == "svm") {
    std::cout << "dim\t" << j.at("dim").get<size_t>() << '\n';
    std::cout << "support_vectors\t" << j.at("support_vectors").size() << '\n';
    std::cout << "b\t" << j.at("b").get<double>() << '\n';
    std::cout << "converged\t" << (j.at("converged").get<bool>() ? "true" : "false") << '\n';
    std::cout << "pair_steps\t" << j.at("pair_steps").get<size_t>() << '\n';
  } else {
    std::cout << "unrecognized model document\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment polarity experiment bench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command line wins");

  RunConfig cfg;
  std::string baseline_list;
  std::string model_path;

  auto add_common = [&](CLI::App* cmd, bool needs_corpus) {
    auto* corpus_opt =
        cmd->add_option("--corpus", cfg.corpus_root, "corpus root with pos/ and neg/");
    if (needs_corpus) corpus_opt->required();
    cmd->add_option("--out", cfg.out_dir, "artifact output directory");
    cmd->add_option("--cap", cfg.cap, "per-author per-label cap; 0 disables")
        ->capture_default_str();
    cmd->add_option("--tagger", cfg.tagger, "builtin | pretagged")
        ->check(CLI::IsMember({"builtin", "pretagged"}))
        ->capture_default_str();
    cmd->add_option("--negation-lexicon", cfg.negation_lexicon,
                    "negation trigger file (one per line)");
  };

  auto* prepare = app.add_subcommand("prepare", "load and validate a corpus, write statistics");
  add_common(prepare, true);

  auto* run = app.add_subcommand("run", "cross-validated experiment grid");
  add_common(run, true);
  run->add_option("--seed", cfg.seed, "fold-plan seed")->capture_default_str();
  run->add_option("--folds", cfg.folds, "number of folds")->capture_default_str();
  run->add_option("--n-per-class", cfg.n_per_class,
                  "documents selected per class; 0 = all balanced")
      ->capture_default_str();
  run->add_option("--row", cfg.row, "single row number (1-8)");
  run->add_option("--clf", cfg.clf, "nb | me | svm | all")
      ->check(CLI::IsMember({"nb", "me", "svm", "all"}))
      ->capture_default_str();
  run->add_flag("--all", "run the full grid (default when --row/--clf absent)");
  run->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  run->add_flag("--global-vocab", cfg.global_vocab,
                "build vocabularies on the whole corpus instead of per fold");
  run->add_flag("--no-negation", cfg.no_negation, "disable negation tagging");
  run->add_flag("--markdown", cfg.markdown, "also render a markdown table");
  run->add_option("--sigma2", cfg.sigma2, "maxent gaussian prior variance")
      ->capture_default_str();
  run->add_option("--iterations", cfg.iterations, "maxent iis iterations")
      ->capture_default_str();
  run->add_option("--svm-c", cfg.svm_c, "svm box constraint")->capture_default_str();

  auto* baseline = app.add_subcommand("baseline", "word-list counting baseline");
  add_common(baseline, true);
  baseline->add_option("--list", baseline_list, "human1 | human2 | human3 | path to list file")
      ->required();

  auto* inspect = app.add_subcommand("inspect", "summarize a serialized model");
  inspect->add_option("--model", model_path, "model json file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (prepare->parsed()) return cmd_prepare(cfg);
    if (run->parsed()) return cmd_run(cfg);
    if (baseline->parsed()) return cmd_baseline(cfg, baseline_list);
    if (inspect->parsed()) return cmd_inspect(model_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
