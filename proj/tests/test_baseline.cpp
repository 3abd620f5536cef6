#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "polarity/baseline.hpp"
#include "polarity/text.hpp"

using namespace polarity;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& content) {
    path = fs::temp_directory_path() /
           ("wordlist_test_" + std::to_string(reinterpret_cast<uintptr_t>(this)) + ".txt");
    std::ofstream(path) << content;
  }
  ~TempFile() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

std::pair<TokenSeq, Polarity> doc(const std::string& text, Polarity label) {
  return {tokenize(text), label};
}

}  // namespace

TEST_CASE("counting verdicts follow the hit difference") {
  WordList wl = WordList::builtin("human1");

  auto r = count_decide(tokenize("a brilliant but terrible and awful mess"), wl);
  CHECK(r.positive_hits == 1);
  CHECK(r.negative_hits == 2);
  CHECK(r.verdict == CountVerdict::Neg);

  r = count_decide(tokenize("dazzling, excellent, and fantastic"), wl);
  CHECK(r.positive_hits == 3);
  CHECK(r.verdict == CountVerdict::Pos);

  r = count_decide(tokenize("brilliant yet terrible"), wl);
  CHECK(r.verdict == CountVerdict::Tie);

  r = count_decide(tokenize("nothing from the list at all"), wl);
  CHECK(r.positive_hits == 0);
  CHECK(r.negative_hits == 0);
  CHECK(r.verdict == CountVerdict::Tie);

  // repeated occurrences all count
  r = count_decide(tokenize("excellent excellent excellent"), wl);
  CHECK(r.positive_hits == 3);
}

TEST_CASE("multi-word phrases match as contiguous token runs") {
  WordList wl;
  wl.name = "phrases";
  wl.positive = {"really great"};
  wl.negative = {"waste of time"};

  auto r = count_decide(tokenize("really great start, really great end"), wl);
  CHECK(r.positive_hits == 2);

  r = count_decide(tokenize("great really"), wl);  // order matters
  CHECK(r.positive_hits == 0);

  r = count_decide(tokenize("a total waste of time honestly"), wl);
  CHECK(r.negative_hits == 1);

  r = count_decide(tokenize("waste of effort, but great"), wl);
  CHECK(r.negative_hits == 0);

  // overlapping starts each count
  WordList rep;
  rep.name = "rep";
  rep.positive = {"na na"};
  rep.negative = {"x"};
  CHECK(count_decide(tokenize("na na na"), rep).positive_hits == 2);
}

TEST_CASE("punctuation entries match lone marks but not runs") {
  WordList wl = WordList::builtin("human3");
  // "?" and "!" sit on the negative side of this list
  auto r = count_decide(tokenize("why ? just why ?"), wl);
  CHECK(r.negative_hits == 2);

  // a "?!" burst tokenizes as one run token and stays unmatched
  r = count_decide(tokenize("why ?!"), wl);
  CHECK(r.negative_hits == 0);

  r = count_decide(tokenize("what a film !"), wl);
  CHECK(r.negative_hits == 1);
}

TEST_CASE("word list files parse sections, comments, and case") {
  TempFile f(
      "# reviewer picks\n"
      "[positive]\n"
      "Great   # trailing note\n"
      "  superb  \n"
      "\n"
      "really great\n"
      "[negative]\n"
      "awful\n"
      "?\n");
  WordList wl = WordList::from_file(f.path.string());
  CHECK(wl.positive == std::vector<std::string>{"great", "superb", "really great"});
  CHECK(wl.negative == std::vector<std::string>{"awful", "?"});
  CHECK(wl.name == f.path.string());
}

TEST_CASE("word list files reject malformed input") {
  TempFile early("stray\n[positive]\ngood\n[negative]\nbad\n");
  CHECK_THROWS_AS(WordList::from_file(early.path.string()), std::runtime_error);

  TempFile onesided("[positive]\ngood\n");
  CHECK_THROWS_AS(WordList::from_file(onesided.path.string()), std::invalid_argument);

  TempFile overlap("[positive]\ngood\nodd\n[negative]\nodd\n");
  CHECK_THROWS_AS(WordList::from_file(overlap.path.string()), std::invalid_argument);

  CHECK_THROWS_AS(WordList::from_file("/nonexistent/word list.txt"), std::runtime_error);
}

TEST_CASE("built-in lists carry the expected entries") {
  WordList h1 = WordList::builtin("human1");
  CHECK(h1.positive.size() == 5);
  CHECK(h1.negative.size() == 5);
  CHECK(h1.positive[0] == "dazzling");
  CHECK(h1.negative[3] == "unwatchable");

  WordList h2 = WordList::builtin("human2");
  CHECK(h2.positive.size() == 11);
  CHECK(h2.negative.size() == 6);
  CHECK(h2.positive[7] == "badass");
  CHECK(h2.negative[1] == "cliched");

  WordList h3 = WordList::builtin("human3");
  CHECK(h3.positive.size() == 7);
  CHECK(h3.negative.size() == 7);
  CHECK(h3.positive[5] == "still");
  CHECK(h3.negative[5] == "?");
  CHECK(h3.negative[6] == "!");

  CHECK(WordList::builtin_names() == std::vector<std::string>{"human1", "human2", "human3"});
  CHECK_THROWS_AS(WordList::builtin("human9"), std::invalid_argument);
}

TEST_CASE("bundled list files mirror the built-ins") {
  for (const auto& name : WordList::builtin_names()) {
    CAPTURE(name);
    WordList built = WordList::builtin(name);
    WordList file = WordList::from_file(std::string(WORDLIST_DATA_DIR) + "/" + name + ".txt");
    CHECK(file.positive == built.positive);
    CHECK(file.negative == built.negative);
  }
}

TEST_CASE("evaluation reports exact fractions under both tie policies") {
  WordList wl;
  wl.name = "toy";
  wl.positive = {"good"};
  wl.negative = {"bad"};

  // ties split: one Pos, one Neg; policies even out and the positive
  // default wins
  std::vector<std::pair<TokenSeq, Polarity>> even = {
      doc("good movie", Polarity::Pos),  doc("bad movie", Polarity::Neg),
      doc("good bad", Polarity::Pos),    doc("plain text", Polarity::Neg),
      doc("bad thing", Polarity::Pos)};
  BaselineReport r = evaluate_baseline(even, wl);
  CHECK(r.total == 5);
  CHECK(r.ties == 2);
  CHECK(r.decided_correct == 2);
  CHECK(r.tied_pos_labels == 1);
  CHECK(r.accuracy_all_pos == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(r.accuracy_all_neg == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(r.tie_policy_chosen == TiePolicy::AllPos);
  CHECK(r.accuracy == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(r.tie_rate == doctest::Approx(40.0).epsilon(1e-12));

  // all tied documents carry Neg labels: the all-neg policy is better
  std::vector<std::pair<TokenSeq, Polarity>> skewed = {
      doc("good movie", Polarity::Pos), doc("bad movie", Polarity::Neg),
      doc("good bad", Polarity::Neg),   doc("plain text", Polarity::Neg),
      doc("bad thing", Polarity::Pos)};
  r = evaluate_baseline(skewed, wl);
  CHECK(r.ties == 2);
  CHECK(r.tied_pos_labels == 0);
  CHECK(r.accuracy_all_pos == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(r.accuracy_all_neg == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(r.tie_policy_chosen == TiePolicy::AllNeg);
  CHECK(r.accuracy == doctest::Approx(80.0).epsilon(1e-12));

  CHECK_THROWS_AS(evaluate_baseline({}, wl), std::invalid_argument);
}

TEST_CASE("baseline reports serialize their counts") {
  WordList wl;
  wl.name = "toy";
  wl.positive = {"good"};
  wl.negative = {"bad"};
  BaselineReport r = evaluate_baseline(
      {doc("good stuff", Polarity::Pos), doc("bad stuff", Polarity::Neg)}, wl);
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("list") == "toy");
  CHECK(j.at("accuracy") == 100.0);
  CHECK(j.at("ties") == 0);
  CHECK(j.at("tie_policy") == "all-pos");
  CHECK(j.at("total") == 2);
}
