#include <sys/wait.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "polarity/corpus.hpp"
#include "support/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CmdResult run_cmd(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& stem) {
    path = fs::temp_directory_path() /
           (stem + "_" + std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Shared synthetic corpus on disk, built once per binary run.
const fs::path& corpus_root() {
  static TempDir dir("cli_corpus");
  static bool ready = false;
  if (!ready) {
    testsupport::SynthOptions opt;
    opt.docs_per_class = 8;
    testsupport::write_corpus(dir.path, testsupport::synth_corpus(opt));
    ready = true;
  }
  return dir.path;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("help and argument errors use conventional exit codes") {
  CHECK(run_cmd("--help").exit_code == 0);
  CHECK(run_cmd("--help").output.find("experiment bench") != std::string::npos);
  CHECK(run_cmd("run --help").exit_code == 0);

  CHECK(run_cmd("").exit_code == 2);                // a subcommand is required
  CHECK(run_cmd("frobnicate").exit_code == 2);      // unknown subcommand
  CHECK(run_cmd("run").exit_code == 2);             // missing --corpus
  CHECK(run_cmd("run --corpus /tmp --bogus-flag").exit_code == 2);
  CHECK(run_cmd("run --corpus /nonexistent/place --n-per-class 0").exit_code == 2);
  CHECK(run_cmd("baseline --corpus " + q(corpus_root())).exit_code == 2);  // missing --list
}

TEST_CASE("a corpus without both label directories is rejected") {
  TempDir broken("cli_broken");
  fs::create_directories(broken.path / "pos");
  std::ofstream(broken.path / "pos" / "a.txt") << "fine words\n";
  auto r = run_cmd("run --corpus " + q(broken.path) + " --n-per-class 0");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("prepare writes a corpus statistics report") {
  TempDir out("cli_prepare");
  auto r = run_cmd("prepare --corpus " + q(corpus_root()) + " --out " + q(out.path));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out.path / "corpus_report.json"));
  CHECK(j.at("documents") == 16);
  CHECK(j.at("pos") == 8);
  CHECK(j.at("neg") == 8);
}

TEST_CASE("identical runs produce identical result files") {
  TempDir out1("cli_run1");
  TempDir out2("cli_run2");
  const std::string common =
      " --corpus " + q(corpus_root()) + " --n-per-class 0 --seed 7 --markdown --out ";
  auto r1 = run_cmd("run" + common + q(out1.path));
  CHECK(r1.exit_code == 0);
  auto r2 = run_cmd("run" + common + q(out2.path));
  CHECK(r2.exit_code == 0);

  const std::string tsv1 = slurp(out1.path / "results.tsv");
  CHECK(tsv1 == slurp(out2.path / "results.tsv"));
  CHECK(slurp(out1.path / "results.json") == slurp(out2.path / "results.json"));

  CHECK(tsv1.find("row\tfeatures\tcount\tmode\tNB\tME\tSVM\n") != std::string::npos);
  CHECK(tsv1.find("N/A") != std::string::npos);  // frequency row, exponential model
  CHECK(tsv1.find("# seed\t7\n") != std::string::npos);

  CHECK(fs::exists(out1.path / "fold_plan.json"));
  CHECK(fs::exists(out1.path / "resolved_config.txt"));
  CHECK(fs::exists(out1.path / "results.md"));
  CHECK(slurp(out1.path / "results.md").find("**") != std::string::npos);

  auto j = nlohmann::json::parse(slurp(out1.path / "results.json"));
  CHECK(j.at("rows").size() == 8);
  CHECK(j.at("config").at("seed") == "7");

  // models were persisted alongside the table
  CHECK(fs::exists(out1.path / "models" / "row2_nb_fold1.json"));
  CHECK(fs::exists(out1.path / "models" / "row2_svm_fold3.json"));
  CHECK(fs::exists(out1.path / "logs" / "row2_me_fold2.tsv"));
}

TEST_CASE("a single row and classifier can run alone") {
  TempDir out("cli_single");
  auto r = run_cmd("run --corpus " + q(corpus_root()) +
                   " --n-per-class 0 --row 1 --clf me --out " + q(out.path));
  CHECK(r.exit_code == 0);
  CHECK(slurp(out.path / "results.tsv").find("N/A") != std::string::npos);

  auto r2 = run_cmd("run --corpus " + q(corpus_root()) +
                    " --n-per-class 0 --row 5 --clf nb --out " + q(out.path));
  CHECK(r2.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out.path / "results.json"));
  CHECK(j.at("rows").at(0).at("cells").at("nb").at("status") == "ok");
}

TEST_CASE("baseline reports counting accuracy for built-in and file lists") {
  TempDir out("cli_baseline");
  auto r = run_cmd("baseline --corpus " + q(corpus_root()) + " --list human3 --out " +
                   q(out.path));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("list\thuman3") != std::string::npos);
  CHECK(r.output.find("accuracy\t") != std::string::npos);
  CHECK(r.output.find("tie-policy\t") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(out.path / "baseline_human3.json"));
  CHECK(j.at("list") == "human3");
  CHECK(j.at("total") == 16);

  const fs::path list = out.path / "mylist.txt";
  std::ofstream(list) << "[positive]\nexcellent\nwonderful\n[negative]\nterrible\nboring\n";
  auto r2 = run_cmd("baseline --corpus " + q(corpus_root()) + " --list " + q(list) +
                    " --out " + q(out.path));
  CHECK(r2.exit_code == 0);
  CHECK(fs::exists(out.path / "baseline_mylist.json"));
}

TEST_CASE("inspect summarizes each model family") {
  TempDir out("cli_inspect");
  auto r = run_cmd("run --corpus " + q(corpus_root()) +
                   " --n-per-class 0 --row 2 --out " + q(out.path));
  REQUIRE(r.exit_code == 0);

  auto nb = run_cmd("inspect --model " + q(out.path / "models" / "row2_nb_fold1.json"));
  CHECK(nb.exit_code == 0);
  CHECK(nb.output.find("type\tnaive-bayes") != std::string::npos);
  CHECK(nb.output.find("vocab_size\t") != std::string::npos);

  auto me = run_cmd("inspect --model " + q(out.path / "models" / "row2_me_fold1.json"));
  CHECK(me.exit_code == 0);
  CHECK(me.output.find("type\tmaxent") != std::string::npos);
  CHECK(me.output.find("iterations\t10") != std::string::npos);

  auto svm = run_cmd("inspect --model " + q(out.path / "models" / "row2_svm_fold1.json"));
  CHECK(svm.exit_code == 0);
  CHECK(svm.output.find("type\tsvm") != std::string::npos);
  CHECK(svm.output.find("converged\ttrue") != std::string::npos);

  CHECK(run_cmd("inspect --model /nonexistent.json").exit_code == 2);

  const fs::path odd = out.path / "odd.json";
  std::ofstream(odd) << "{\"type\": \"mystery\"}";
  CHECK(run_cmd("inspect --model " + q(odd)).exit_code == 1);
}

TEST_CASE("pre-tagged corpora run through their own ingestion path") {
  TempDir root("cli_pretagged");
  testsupport::SynthOptions opt;
  opt.docs_per_class = 6;
  auto docs = testsupport::synth_corpus(opt);
  for (auto& d : docs) {
    std::istringstream words(d.text);
    std::ostringstream tagged;
    std::string w;
    bool first = true;
    while (words >> w) {
      if (!first) tagged << ' ';
      first = false;
      const bool word = std::isalnum(static_cast<unsigned char>(w[0])) != 0;
      tagged << (word ? w + "_NN" : w);
    }
    d.text = tagged.str();
  }
  testsupport::write_corpus(root.path, docs);

  TempDir out("cli_pretagged_out");
  auto r = run_cmd("run --corpus " + q(root.path) +
                   " --tagger pretagged --n-per-class 0 --row 5 --clf nb --out " + q(out.path));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out.path / "results.json"));
  CHECK(j.at("rows").at(0).at("cells").at("nb").at("status") == "ok");
  CHECK(j.at("rows").at(0).at("features") == "unigrams+POS");
}
