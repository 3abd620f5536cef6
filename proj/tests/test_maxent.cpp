#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "polarity/maxent.hpp"

using namespace polarity;

namespace {

FeatureVector fv(std::vector<std::pair<uint32_t, uint32_t>> entries) {
  FeatureVector v;
  v.mode = FeatureMode::Presence;
  v.entries = std::move(entries);
  return v;
}

// Mixed, non-separable six-document problem over four features.
std::vector<std::pair<FeatureVector, Polarity>> mixed_corpus() {
  return {{fv({{0, 1}, {1, 1}}), Polarity::Pos}, {fv({{0, 1}, {2, 1}}), Polarity::Pos},
          {fv({{1, 1}, {3, 1}}), Polarity::Pos}, {fv({{2, 1}, {3, 1}}), Polarity::Neg},
          {fv({{2, 1}}), Polarity::Neg},         {fv({{0, 1}, {3, 1}}), Polarity::Neg}};
}

struct Objective {
  std::vector<std::vector<uint32_t>> active;
  std::vector<size_t> labels;
  double sigma2;

  explicit Objective(const std::vector<std::pair<FeatureVector, Polarity>>& train, double s2)
      : sigma2(s2) {
    for (const auto& [v, label] : train) {
      active.push_back(active_features(v));
      labels.push_back(static_cast<size_t>(class_index(label)));
    }
  }

  double penalized_ll(const std::vector<std::array<double, 2>>& lambda) const {
    double ll = 0.0;
    for (size_t d = 0; d < active.size(); ++d) {
      double s0 = 0.0, s1 = 0.0;
      for (uint32_t id : active[d]) {
        s0 += lambda[id][0];
        s1 += lambda[id][1];
      }
      const double hi = std::max(s0, s1);
      ll += (labels[d] == 0 ? s0 : s1) - hi -
            std::log(std::exp(s0 - hi) + std::exp(s1 - hi));
    }
    double pen = 0.0;
    for (const auto& lc : lambda) pen += lc[0] * lc[0] + lc[1] * lc[1];
    return ll - 0.5 * pen / sigma2;
  }

  std::vector<std::array<double, 2>> gradient(
      const std::vector<std::array<double, 2>>& lambda) const {
    std::vector<std::array<double, 2>> g(lambda.size(), {0.0, 0.0});
    for (size_t d = 0; d < active.size(); ++d) {
      double s0 = 0.0, s1 = 0.0;
      for (uint32_t id : active[d]) {
        s0 += lambda[id][0];
        s1 += lambda[id][1];
      }
      const double hi = std::max(s0, s1);
      const double e0 = std::exp(s0 - hi), e1 = std::exp(s1 - hi);
      const std::array<double, 2> p{e0 / (e0 + e1), e1 / (e0 + e1)};
      for (uint32_t id : active[d])
        for (size_t c = 0; c < 2; ++c)
          g[id][c] += (labels[d] == c ? 1.0 : 0.0) - p[c];
    }
    for (size_t i = 0; i < lambda.size(); ++i)
      for (size_t c = 0; c < 2; ++c) g[i][c] -= lambda[i][c] / sigma2;
    return g;
  }
};

}  // namespace

TEST_CASE("iterative scaling drives the penalized-likelihood gradient to zero") {
  IisConfig cfg;
  cfg.iterations = 300;
  cfg.gaussian_sigma2 = 1.0;
  auto train = mixed_corpus();
  MaxEntModel model = maxent_train(train, cfg, 4);

  Objective obj(train, cfg.gaussian_sigma2);

  // logged objective agrees with an independent evaluation of the same weights
  CHECK(model.training_log.size() == 300);
  CHECK(model.training_log.back().penalized_ll ==
        doctest::Approx(obj.penalized_ll(model.lambda)).epsilon(1e-9));

  // central finite differences around the returned weights
  const double h = 1e-4;
  double sup = 0.0;
  auto lambda = model.lambda;
  for (size_t i = 0; i < lambda.size(); ++i)
    for (size_t c = 0; c < 2; ++c) {
      const double keep = lambda[i][c];
      lambda[i][c] = keep + h;
      const double up = obj.penalized_ll(lambda);
      lambda[i][c] = keep - h;
      const double down = obj.penalized_ll(lambda);
      lambda[i][c] = keep;
      sup = std::max(sup, std::abs((up - down) / (2 * h)));
    }
  CHECK(sup <= 1e-3);
  CHECK(model.bracket_failures == 0);
}

TEST_CASE("each iteration improves the penalized likelihood") {
  IisConfig cfg;  // defaults: 10 iterations, sigma2 = 1
  MaxEntModel model = maxent_train(mixed_corpus(), cfg, 4);
  REQUIRE(model.training_log.size() == 10);
  for (size_t k = 0; k < model.training_log.size(); ++k) {
    CHECK(model.training_log[k].iteration == k + 1);
    if (k > 0)
      CHECK(model.training_log[k].penalized_ll >=
            model.training_log[k - 1].penalized_ll - 1e-9);
    CHECK(model.training_log[k].train_accuracy >= 0.0);
    CHECK(model.training_log[k].train_accuracy <= 100.0);
  }
}

TEST_CASE("one update step has a closed form on a disjoint corpus") {
  // Two classes marked by disjoint single features; with a near-flat prior the
  // first update solves e^delta = 2, i.e. delta = log 2.
  std::vector<std::pair<FeatureVector, Polarity>> train = {
      {fv({{0, 1}}), Polarity::Pos},
      {fv({{0, 1}}), Polarity::Pos},
      {fv({{1, 1}}), Polarity::Neg},
      {fv({{1, 1}}), Polarity::Neg}};
  IisConfig cfg;
  cfg.iterations = 1;
  cfg.gaussian_sigma2 = 1e12;
  MaxEntModel model = maxent_train(train, cfg, 2);

  const size_t pos = static_cast<size_t>(class_index(Polarity::Pos));
  const size_t neg = static_cast<size_t>(class_index(Polarity::Neg));
  CHECK(model.lambda[0][pos] == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(model.lambda[1][neg] == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  // mirror-image features receive mirror-image weights
  CHECK(model.lambda[0][pos] == doctest::Approx(model.lambda[1][neg]).epsilon(1e-12));
  CHECK(model.lambda[0][neg] == doctest::Approx(model.lambda[1][pos]).epsilon(1e-12));

  CHECK(maxent_classify(model, fv({{0, 1}})).label == Polarity::Pos);
  CHECK(maxent_classify(model, fv({{1, 1}})).label == Polarity::Neg);
}

TEST_CASE("scaling agrees with a gradient-ascent oracle at the optimum") {
  auto train = mixed_corpus();
  IisConfig cfg;
  cfg.iterations = 300;
  cfg.gaussian_sigma2 = 1.0;
  MaxEntModel model = maxent_train(train, cfg, 4);

  // plain gradient ascent on the same strictly concave objective
  Objective obj(train, cfg.gaussian_sigma2);
  std::vector<std::array<double, 2>> lambda(4, {0.0, 0.0});
  for (int step = 0; step < 20000; ++step) {
    auto g = obj.gradient(lambda);
    for (size_t i = 0; i < lambda.size(); ++i)
      for (size_t c = 0; c < 2; ++c) lambda[i][c] += 0.1 * g[i][c];
  }

  double sup = 0.0;
  for (size_t i = 0; i < lambda.size(); ++i)
    for (size_t c = 0; c < 2; ++c)
      sup = std::max(sup, std::abs(lambda[i][c] - model.lambda[i][c]));
  CHECK(sup <= 2e-3);

  for (const auto& [v, label] : train) {
    (void)label;
    double s0 = 0.0, s1 = 0.0;
    for (uint32_t id : active_features(v)) {
      s0 += lambda[id][0];
      s1 += lambda[id][1];
    }
    const double p0 = 1.0 / (1.0 + std::exp(s1 - s0));
    const auto d = maxent_classify(model, v);
    CHECK(d.posterior[0] == doctest::Approx(p0).epsilon(1e-2));
    CHECK(d.posterior[0] + d.posterior[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("feature counts beyond presence do not change the model") {
  auto once = mixed_corpus();
  auto heavy = mixed_corpus();
  for (auto& [v, label] : heavy) {
    (void)label;
    for (auto& [id, n] : v.entries) n = 7;
  }
  IisConfig cfg;
  auto a = maxent_train(once, cfg, 4);
  auto b = maxent_train(heavy, cfg, 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t c = 0; c < 2; ++c) CHECK(a.lambda[i][c] == b.lambda[i][c]);
}

TEST_CASE("update solver finds roots and reports missing brackets") {
  bool ok = false;
  // e^delta = 2  =>  delta = log 2
  double d = detail::solve_iis_delta({{1, 1.0}}, 2.0, 0.0, 0.0, 1e-12, 100, &ok);
  CHECK(ok);
  CHECK(d == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  // without a prior, zero empirical count pushes the root toward -infinity;
  // the solver stops where e^delta underflows to zero
  d = detail::solve_iis_delta({{1, 1.0}}, 0.0, 0.0, 0.0, 1e-6, 50, &ok);
  CHECK(ok);
  CHECK(d < -700.0);

  // a constant h (exponent 0) with the wrong sign can never bracket
  d = detail::solve_iis_delta({{0, 1.0}}, 5.0, 0.0, 0.0, 1e-6, 50, &ok);
  CHECK_FALSE(ok);
  CHECK(d == 0.0);
  d = detail::solve_iis_delta({{0, 1.0}}, 0.5, 0.0, 0.0, 1e-6, 50, &ok);
  CHECK_FALSE(ok);
  CHECK(d == 0.0);

  // no terms and no prior: h degenerates to a constant
  d = detail::solve_iis_delta({}, 0.0, 0.0, 0.0, 1e-6, 50, &ok);
  CHECK(ok);
  CHECK(d == 0.0);
  d = detail::solve_iis_delta({}, 5.0, 0.0, 0.0, 1e-6, 50, &ok);
  CHECK_FALSE(ok);

  // a Gaussian prior restores the bracket for the zero-count case
  d = detail::solve_iis_delta({{1, 1.0}}, 0.0, 0.0, 1.0, 1e-9, 100, &ok);
  CHECK(ok);
  CHECK(d < 0.0);
  CHECK(std::exp(d) + d == doctest::Approx(0.0).epsilon(1e-6));  // h(d) = 0
}

TEST_CASE("feature ids pick out the active set") {
  auto ids = active_features(fv({{3, 2}, {0, 1}, {9, 4}}));
  CHECK(ids == std::vector<uint32_t>{3, 0, 9});
  CHECK(active_features(FeatureVector{}).empty());
}

TEST_CASE("an even posterior resolves to the positive class") {
  IisConfig cfg;
  cfg.iterations = 2;
  MaxEntModel model = maxent_train(mixed_corpus(), cfg, 4);
  auto d = maxent_classify(model, FeatureVector{});  // no evidence: scores 0, 0
  CHECK(d.label == Polarity::Pos);
  CHECK(d.posterior[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("training and classification validate their inputs") {
  IisConfig cfg;
  CHECK_THROWS_AS(maxent_train({}, cfg, 4), std::invalid_argument);
  CHECK_THROWS_AS(maxent_train(mixed_corpus(), cfg, 0), std::invalid_argument);
  CHECK_THROWS_AS(maxent_train(mixed_corpus(), cfg, 2), std::invalid_argument);  // id 3 >= 2

  IisConfig bad = cfg;
  bad.iterations = 0;
  CHECK_THROWS_AS(maxent_train(mixed_corpus(), bad, 4), std::invalid_argument);
  bad = cfg;
  bad.gaussian_sigma2 = 0.0;
  CHECK_THROWS_AS(maxent_train(mixed_corpus(), bad, 4), std::invalid_argument);
  bad.gaussian_sigma2 = -1.0;
  CHECK_THROWS_AS(maxent_train(mixed_corpus(), bad, 4), std::invalid_argument);

  CHECK_THROWS_AS(
      maxent_train({{fv({{0, 1}}), Polarity::Pos}, {fv({{1, 1}}), Polarity::Pos}}, cfg, 2),
      std::invalid_argument);

  MaxEntModel model = maxent_train(mixed_corpus(), cfg, 4);
  CHECK_THROWS_AS(maxent_classify(model, fv({{11, 1}})), std::invalid_argument);
}

TEST_CASE("model serialization carries weights and the training log") {
  IisConfig cfg;
  cfg.iterations = 3;
  MaxEntModel model = maxent_train(mixed_corpus(), cfg, 4, 0x99ULL);
  auto j = nlohmann::json::parse(model.to_json());
  CHECK(j.at("type") == "maxent");
  CHECK(j.at("vocab_size") == 4);
  CHECK(j.at("vocab_fingerprint") == 0x99ULL);
  CHECK(j.at("bracket_failures") == 0);
  CHECK(j.at("lambda").size() == 4);
  CHECK(j.at("training_log").size() == 3);
  CHECK(j.at("training_log").at(0).at("iteration") == 1);

  auto tsv = model.training_log_tsv();
  CHECK(tsv.rfind("iteration\tpenalized_ll\ttrain_accuracy\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 4);
}
