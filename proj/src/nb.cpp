#include "polarity/nb.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace polarity {

NbModel nb_train(const std::vector<std::pair<FeatureVector, Polarity>>& train, size_t vocab_size,
                 uint64_t vocab_fingerprint) {
  if (vocab_size == 0) throw std::invalid_argument("vocabulary must be non-empty");
  if (train.empty()) throw std::invalid_argument("training set is empty");

  std::array<uint64_t, 2> doc_count{};
  std::vector<std::array<uint64_t, 2>> feature_count(vocab_size, {0, 0});
  std::array<uint64_t, 2> total{};

  for (const auto& [v, label] : train) {
    const size_t c = class_index(label);
    ++doc_count[c];
    for (const auto& [id, n] : v.entries) {
      if (id >= vocab_size)
        throw std::invalid_argument("feature id " + std::to_string(id) +
                                    " outside vocabulary of size " + std::to_string(vocab_size));
      feature_count[id][c] += n;
      total[c] += n;
    }
  }
  for (size_t c = 0; c < 2; ++c)
    if (doc_count[c] == 0)
      throw std::invalid_argument(std::string("training set has no ") +
                                  to_string(c == 0 ? Polarity::Pos : Polarity::Neg) +
                                  " documents; class prior would be zero");

  NbModel model;
  model.vocab_size = vocab_size;
  model.vocab_fingerprint = vocab_fingerprint;
  model.class_feature_total = total;
  const double n_docs = static_cast<double>(train.size());
  for (size_t c = 0; c < 2; ++c)
    model.log_prior[c] = std::log(static_cast<double>(doc_count[c]) / n_docs);

  model.log_cond.resize(vocab_size);
  for (size_t c = 0; c < 2; ++c) {
    const double denom = std::log(static_cast<double>(total[c]) + static_cast<double>(vocab_size));
    for (size_t i = 0; i < vocab_size; ++i)
      model.log_cond[i][c] = std::log(static_cast<double>(feature_count[i][c]) + 1.0) - denom;
  }
  return model;
}

NbDecision nb_classify(const NbModel& model, const FeatureVector& v) {
  std::array<double, 2> score = model.log_prior;
  for (const auto& [id, n] : v.entries) {
    if (id >= model.vocab_size)
      throw std::invalid_argument("feature id " + std::to_string(id) +
                                  " outside model vocabulary");
    for (size_t c = 0; c < 2; ++c) score[c] += n * model.log_cond[id][c];
  }

  NbDecision d;
  d.label = score[class_index(Polarity::Pos)] >= score[class_index(Polarity::Neg)]
                ? Polarity::Pos
                : Polarity::Neg;
  const double hi = std::max(score[0], score[1]);
  const double lse = hi + std::log(std::exp(score[0] - hi) + std::exp(score[1] - hi));
  for (size_t c = 0; c < 2; ++c) d.log_posterior[c] = score[c] - lse;
  return d;
}

std::string NbModel::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "naive-bayes";
  j["version"] = 1;
  j["vocab_size"] = vocab_size;
  j["vocab_fingerprint"] = vocab_fingerprint;
  j["log_prior"] = {{"pos", log_prior[class_index(Polarity::Pos)]},
                    {"neg", log_prior[class_index(Polarity::Neg)]}};
  j["class_feature_total"] = {{"pos", class_feature_total[class_index(Polarity::Pos)]},
                              {"neg", class_feature_total[class_index(Polarity::Neg)]}};
  nlohmann::ordered_json cond = nlohmann::ordered_json::array();
  for (const auto& lc : log_cond)
    cond.push_back({lc[class_index(Polarity::Pos)], lc[class_index(Polarity::Neg)]});
  j["log_cond"] = std::move(cond);
  return j.dump(2);
}

}  // namespace polarity
