#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polarity/corpus.hpp"
#include "polarity/features.hpp"

namespace polarity {

// Real-valued sparse vector, entries sorted by id.
struct SparseVec {
  std::string doc_id;
  std::vector<std::pair<uint32_t, double>> entries;

  double dot(const SparseVec& other) const;
  double norm() const;
};

// Scales to unit Euclidean length. An all-zero vector passes through
// unchanged with a warning.
SparseVec length_normalize(const FeatureVector& v);

struct SvmConfig {
  double C = 1.0;
  double kkt_tol = 1e-3;
  size_t max_passes = 0;  // pair-step cap; 0 means 10 * n
};

// Soft-margin linear SVM solved in the dual by sequential minimal
// optimization over maximal-violating pairs.
struct SvmModel {
  std::vector<double> alpha;
  std::vector<int> labels;  // +1 / -1, aligned with training order
  std::vector<std::string> doc_ids;
  std::vector<double> w;  // dense, indexed by feature id
  double b = 0.0;
  double C = 1.0;
  std::vector<size_t> support_indices;  // alpha > 0
  bool converged = false;
  size_t pair_steps = 0;

  std::string to_json() const;
};

SvmModel svm_train(const std::vector<SparseVec>& docs, const std::vector<int>& labels,
                   const SvmConfig& cfg, size_t dim);

double svm_decision(const SvmModel& model, const SparseVec& v);

// sign(w . v + b): Pos when >= 0.
Polarity svm_classify(const SvmModel& model, const SparseVec& v);

}  // namespace polarity
