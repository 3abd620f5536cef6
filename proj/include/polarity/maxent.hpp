#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polarity/corpus.hpp"
#include "polarity/features.hpp"

namespace polarity {

struct IisConfig {
  size_t iterations = 10;
  double gaussian_sigma2 = 1.0;
  double newton_tol = 1e-6;
  size_t newton_max_steps = 50;
};

struct IisIterationLog {
  size_t iteration = 0;       // 1-based
  double penalized_ll = 0.0;  // Gaussian-penalized training log-likelihood
  double train_accuracy = 0.0;
};

// Conditional exponential model over binary feature/class functions
// F_{i,c}(d,c') = [n_i(d) > 0 and c' = c], trained by improved iterative
// scaling with a Gaussian prior.
struct MaxEntModel {
  std::vector<std::array<double, 2>> lambda;  // [feature id][class]
  size_t vocab_size = 0;
  uint64_t vocab_fingerprint = 0;
  std::vector<IisIterationLog> training_log;
  size_t bracket_failures = 0;

  std::string to_json() const;
  std::string training_log_tsv() const;  // iteration \t penalized_ll \t train_accuracy
};

struct MaxEntDecision {
  Polarity label = Polarity::Pos;
  std::array<double, 2> posterior{};  // sums to 1
};

// Ids with n_i(d) > 0, ascending.
std::vector<uint32_t> active_features(const FeatureVector& v);

MaxEntModel maxent_train(const std::vector<std::pair<FeatureVector, Polarity>>& train,
                         const IisConfig& cfg, size_t vocab_size, uint64_t vocab_fingerprint = 0);

MaxEntDecision maxent_classify(const MaxEntModel& model, const FeatureVector& v);

namespace detail {

// One (k, coefficient) term per distinct active-feature count among the
// documents carrying the feature; h(delta) = sum coef*e^(delta*k)
// + inv_sigma2*(lambda+delta) - empirical. Returns the root, or 0 with
// *bracketed=false when no sign change can be found.
double solve_iis_delta(const std::vector<std::pair<uint32_t, double>>& terms, double empirical,
                       double lambda, double inv_sigma2, double tol, size_t max_steps,
                       bool* bracketed);

}  // namespace detail

}  // namespace polarity
