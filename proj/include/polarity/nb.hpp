#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polarity/corpus.hpp"
#include "polarity/features.hpp"

namespace polarity {

// Multinomial model with add-one smoothing: P(f|c) = (count_c(f)+1)/(total_c+m).
struct NbModel {
  std::array<double, 2> log_prior{};             // indexed by class_index()
  std::vector<std::array<double, 2>> log_cond;   // [feature id][class]
  size_t vocab_size = 0;
  std::array<uint64_t, 2> class_feature_total{};  // unsmoothed totals per class
  uint64_t vocab_fingerprint = 0;

  std::string to_json() const;
};

struct NbDecision {
  Polarity label = Polarity::Pos;
  std::array<double, 2> log_posterior{};  // normalized: exp sums to 1
};

NbModel nb_train(const std::vector<std::pair<FeatureVector, Polarity>>& train, size_t vocab_size,
                 uint64_t vocab_fingerprint = 0);

// argmax_c [log P(c) + sum_i n_i(d) log P(f_i|c)]; tie -> Pos.
NbDecision nb_classify(const NbModel& model, const FeatureVector& v);

}  // namespace polarity
