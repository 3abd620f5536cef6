#include "polarity/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "polarity/diag.hpp"

namespace polarity {

std::vector<uint32_t> active_features(const FeatureVector& v) {
  std::vector<uint32_t> ids;
  ids.reserve(v.entries.size());
  for (const auto& [id, n] : v.entries) ids.push_back(id);
  return ids;
}

namespace detail {

namespace {

constexpr double kExpClamp = 690.0;  // exp(690) is finite; beyond overflows

double h_of(const std::vector<std::pair<uint32_t, double>>& terms, double empirical,
            double lambda, double inv_sigma2, double delta) {
  double s = 0.0;
  for (const auto& [k, coef] : terms) s += coef * std::exp(std::min(delta * k, kExpClamp));
  return s + inv_sigma2 * (lambda + delta) - empirical;
}

double hprime_of(const std::vector<std::pair<uint32_t, double>>& terms, double inv_sigma2,
                 double delta) {
  double s = 0.0;
  for (const auto& [k, coef] : terms) s += coef * k * std::exp(std::min(delta * k, kExpClamp));
  return s + inv_sigma2;
}

}  // namespace

double solve_iis_delta(const std::vector<std::pair<uint32_t, double>>& terms, double empirical,
                       double lambda, double inv_sigma2, double tol, size_t max_steps,
                       bool* bracketed) {
  if (bracketed) *bracketed = true;
  if (terms.empty() && inv_sigma2 == 0.0) {
    if (empirical == 0.0) return 0.0;  // h identically zero
    if (bracketed) *bracketed = false;
    return 0.0;
  }

  // h is strictly increasing; bracket the root by doubling outward from 0.
  double h0 = h_of(terms, empirical, lambda, inv_sigma2, 0.0);
  if (h0 == 0.0) return 0.0;
  double lo = 0.0, hi = 0.0;
  if (h0 < 0.0) {
    lo = 0.0;
    hi = 1.0;
    bool found = false;
    for (int i = 0; i < 64; ++i) {
      if (h_of(terms, empirical, lambda, inv_sigma2, hi) >= 0.0) {
        found = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
    }
    if (!found) {
      if (bracketed) *bracketed = false;
      return 0.0;
    }
  } else {
    hi = 0.0;
    lo = -1.0;
    bool found = false;
    for (int i = 0; i < 64; ++i) {
      if (h_of(terms, empirical, lambda, inv_sigma2, lo) <= 0.0) {
        found = true;
        break;
      }
      hi = lo;
      lo *= 2.0;
    }
    if (!found) {
      if (bracketed) *bracketed = false;
      return 0.0;
    }
  }

  // Safeguarded Newton: fall back to bisection whenever a step leaves the
  // bracket or fails to shrink it fast enough.
  double x = 0.5 * (lo + hi);
  double step_prev = std::abs(hi - lo);
  for (size_t i = 0; i < max_steps; ++i) {
    double h = h_of(terms, empirical, lambda, inv_sigma2, x);
    if (h == 0.0) return x;
    if (h < 0.0)
      lo = x;
    else
      hi = x;
    double hp = hprime_of(terms, inv_sigma2, x);
    double x_new;
    if (hp > 0.0) {
      x_new = x - h / hp;
      if (x_new <= lo || x_new >= hi || std::abs(x_new - x) > 0.5 * step_prev)
        x_new = 0.5 * (lo + hi);
    } else {
      x_new = 0.5 * (lo + hi);
    }
    double dx = std::abs(x_new - x);
    x = x_new;
    if (dx < tol) break;
    step_prev = dx;
  }
  return x;
}

}  // namespace detail

namespace {

struct TrainDoc {
  std::vector<uint32_t> active;
  uint32_t fsharp = 0;
  size_t label = 0;  // class_index
};

std::array<double, 2> doc_scores(const std::vector<std::array<double, 2>>& lambda,
                                 const std::vector<uint32_t>& active) {
  std::array<double, 2> s{0.0, 0.0};
  for (uint32_t id : active) {
    s[0] += lambda[id][0];
    s[1] += lambda[id][1];
  }
  return s;
}

std::array<double, 2> softmax2(const std::array<double, 2>& s) {
  const double hi = std::max(s[0], s[1]);
  const double e0 = std::exp(s[0] - hi), e1 = std::exp(s[1] - hi);
  const double z = e0 + e1;
  return {e0 / z, e1 / z};
}

}  // namespace

MaxEntModel maxent_train(const std::vector<std::pair<FeatureVector, Polarity>>& train,
                         const IisConfig& cfg, size_t vocab_size, uint64_t vocab_fingerprint) {
  if (cfg.iterations < 1) throw std::invalid_argument("iis iterations must be >= 1");
  if (!(cfg.gaussian_sigma2 > 0.0) || !std::isfinite(cfg.gaussian_sigma2))
    throw std::invalid_argument("gaussian_sigma2 must be positive and finite");
  if (vocab_size == 0) throw std::invalid_argument("vocabulary must be non-empty");
  if (train.empty()) throw std::invalid_argument("training set is empty");

  const size_t n = train.size();
  std::vector<TrainDoc> docs(n);
  std::array<size_t, 2> per_class{};
  for (size_t d = 0; d < n; ++d) {
    docs[d].active = active_features(train[d].first);
    for (uint32_t id : docs[d].active)
      if (id >= vocab_size)
        throw std::invalid_argument("feature id " + std::to_string(id) +
                                    " outside vocabulary of size " + std::to_string(vocab_size));
    docs[d].fsharp = static_cast<uint32_t>(docs[d].active.size());
    docs[d].label = static_cast<size_t>(class_index(train[d].second));
    ++per_class[docs[d].label];
  }
  if (per_class[0] == 0 || per_class[1] == 0)
    throw std::invalid_argument("training set must contain both classes");

  // Inverted index and per-(feature, class) empirical counts, both fixed
  // across iterations.
  std::vector<std::vector<uint32_t>> postings(vocab_size);
  std::vector<std::array<double, 2>> empirical(vocab_size, {0.0, 0.0});
  for (size_t d = 0; d < n; ++d)
    for (uint32_t id : docs[d].active) {
      postings[id].push_back(static_cast<uint32_t>(d));
      empirical[id][docs[d].label] += 1.0;
    }

  const double inv_sigma2 = 1.0 / cfg.gaussian_sigma2;

  MaxEntModel model;
  model.vocab_size = vocab_size;
  model.vocab_fingerprint = vocab_fingerprint;
  model.lambda.assign(vocab_size, {0.0, 0.0});

  std::vector<std::array<double, 2>> posterior(n);
  std::vector<std::array<double, 2>> next(vocab_size);
  // Scratch for grouping posterior mass by active-feature count.
  uint32_t max_fsharp = 0;
  for (const auto& d : docs) max_fsharp = std::max(max_fsharp, d.fsharp);
  std::vector<std::array<double, 2>> mass_by_k(static_cast<size_t>(max_fsharp) + 1, {0.0, 0.0});
  std::vector<uint32_t> touched;
  std::vector<std::pair<uint32_t, double>> terms;

  for (size_t iter = 1; iter <= cfg.iterations; ++iter) {
    for (size_t d = 0; d < n; ++d)
      posterior[d] = softmax2(doc_scores(model.lambda, docs[d].active));

    for (uint32_t i = 0; i < vocab_size; ++i) {
      touched.clear();
      for (uint32_t d : postings[i]) {
        const uint32_t k = docs[d].fsharp;
        if (mass_by_k[k][0] == 0.0 && mass_by_k[k][1] == 0.0) touched.push_back(k);
        mass_by_k[k][0] += posterior[d][0];
        mass_by_k[k][1] += posterior[d][1];
      }
      std::sort(touched.begin(), touched.end());
      for (size_t c = 0; c < 2; ++c) {
        terms.clear();
        for (uint32_t k : touched)
          if (mass_by_k[k][c] > 0.0) terms.emplace_back(k, mass_by_k[k][c]);
        bool ok = true;
        const double delta =
            detail::solve_iis_delta(terms, empirical[i][c], model.lambda[i][c], inv_sigma2,
                                    cfg.newton_tol, cfg.newton_max_steps, &ok);
        if (!ok) {
          ++model.bracket_failures;
          diag::warn("iis: no bracket for feature " + std::to_string(i) + " class " +
                     std::to_string(c) + "; update skipped");
        }
        next[i][c] = model.lambda[i][c] + delta;
      }
      for (uint32_t k : touched) mass_by_k[k] = {0.0, 0.0};
    }
    model.lambda.swap(next);

    // Penalized log-likelihood and training accuracy under the new weights.
    double ll = 0.0;
    size_t correct = 0;
    for (size_t d = 0; d < n; ++d) {
      const auto s = doc_scores(model.lambda, docs[d].active);
      const double hi = std::max(s[0], s[1]);
      const double lse = hi + std::log(std::exp(s[0] - hi) + std::exp(s[1] - hi));
      ll += s[docs[d].label] - lse;
      const size_t pred = s[0] >= s[1] ? 0 : 1;
      if (pred == docs[d].label) ++correct;
    }
    double penalty = 0.0;
    for (const auto& lc : model.lambda)
      penalty += lc[0] * lc[0] + lc[1] * lc[1];
    ll -= 0.5 * inv_sigma2 * penalty;
    model.training_log.push_back(
        {iter, ll, 100.0 * static_cast<double>(correct) / static_cast<double>(n)});
  }
  return model;
}

MaxEntDecision maxent_classify(const MaxEntModel& model, const FeatureVector& v) {
  std::array<double, 2> s{0.0, 0.0};
  for (const auto& [id, n] : v.entries) {
    if (id >= model.vocab_size)
      throw std::invalid_argument("feature id " + std::to_string(id) +
                                  " outside model vocabulary");
    s[0] += model.lambda[id][0];
    s[1] += model.lambda[id][1];
  }
  MaxEntDecision d;
  d.posterior = softmax2(s);
  const size_t pos = static_cast<size_t>(class_index(Polarity::Pos));
  const size_t neg = static_cast<size_t>(class_index(Polarity::Neg));
  d.label = d.posterior[pos] >= d.posterior[neg] ? Polarity::Pos : Polarity::Neg;
  return d;
}

std::string MaxEntModel::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "maxent";
  j["version"] = 1;
  j["vocab_size"] = vocab_size;
  j["vocab_fingerprint"] = vocab_fingerprint;
  j["bracket_failures"] = bracket_failures;
  nlohmann::ordered_json lam = nlohmann::ordered_json::array();
  for (const auto& lc : lambda)
    lam.push_back({lc[class_index(Polarity::Pos)], lc[class_index(Polarity::Neg)]});
  j["lambda"] = std::move(lam);
  nlohmann::ordered_json log = nlohmann::ordered_json::array();
  for (const auto& row : training_log)
    log.push_back({{"iteration", row.iteration},
                   {"penalized_ll", row.penalized_ll},
                   {"train_accuracy", row.train_accuracy}});
  j["training_log"] = std::move(log);
  return j.dump(2);
}

std::string MaxEntModel::training_log_tsv() const {
  std::ostringstream out;
  out << "iteration\tpenalized_ll\ttrain_accuracy\n";
  char buf[64];
  for (const auto& row : training_log) {
    std::snprintf(buf, sizeof(buf), "%.10g", row.penalized_ll);
    out << row.iteration << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.10g", row.train_accuracy);
    out << '\t' << buf << '\n';
  }
  return out.str();
}

}  // namespace polarity
