#include "polarity/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "polarity/diag.hpp"

namespace polarity {

double SparseVec::dot(const SparseVec& other) const {
  double s = 0.0;
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() && b != other.entries.end()) {
    if (a->first < b->first)
      ++a;
    else if (b->first < a->first)
      ++b;
    else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

double SparseVec::norm() const {
  double s = 0.0;
  for (const auto& [id, x] : entries) s += x * x;
  return std::sqrt(s);
}

SparseVec length_normalize(const FeatureVector& v) {
  SparseVec out;
  out.doc_id = v.doc_id;
  out.entries.reserve(v.entries.size());
  double sq = 0.0;
  for (const auto& [id, n] : v.entries) {
    out.entries.emplace_back(id, static_cast<double>(n));
    sq += static_cast<double>(n) * static_cast<double>(n);
  }
  if (sq == 0.0) {
    diag::warn("length_normalize: document '" + v.doc_id + "' has no features; left as zero");
    return out;
  }
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& [id, x] : out.entries) x *= inv;
  return out;
}

namespace {

double dot_dense(const std::vector<double>& w, const SparseVec& x) {
  double s = 0.0;
  for (const auto& [id, v] : x.entries) s += w[id] * v;
  return s;
}

}  // namespace

SvmModel svm_train(const std::vector<SparseVec>& docs, const std::vector<int>& labels,
                   const SvmConfig& cfg, size_t dim) {
  const size_t n = docs.size();
  if (n == 0) throw std::invalid_argument("training set is empty");
  if (labels.size() != n) throw std::invalid_argument("labels/documents size mismatch");
  if (dim == 0) throw std::invalid_argument("feature dimension must be positive");
  if (!(cfg.C > 0.0)) throw std::invalid_argument("C must be positive");
  bool has_pos = false, has_neg = false;
  for (size_t j = 0; j < n; ++j) {
    if (labels[j] == 1)
      has_pos = true;
    else if (labels[j] == -1)
      has_neg = true;
    else
      throw std::invalid_argument("labels must be +1 or -1");
    for (const auto& [id, x] : docs[j].entries)
      if (id >= dim) throw std::invalid_argument("feature id outside stated dimension");
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("training set must contain both labels");

  const double C = cfg.C;
  const double tol = cfg.kkt_tol;
  const size_t max_passes = cfg.max_passes ? cfg.max_passes : 10 * n;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(dim, 0.0);
  // F_j = w.x_j - y_j; with alpha = 0, F_j = -y_j.
  std::vector<double> F(n);
  for (size_t j = 0; j < n; ++j) F[j] = -static_cast<double>(labels[j]);
  std::vector<double> self_dot(n);
  for (size_t j = 0; j < n; ++j) self_dot[j] = docs[j].dot(docs[j]);

  auto in_up = [&](size_t j) {
    return (labels[j] == 1 && alpha[j] < C) || (labels[j] == -1 && alpha[j] > 0.0);
  };
  auto in_low = [&](size_t j) {
    return (labels[j] == -1 && alpha[j] < C) || (labels[j] == 1 && alpha[j] > 0.0);
  };

  SvmModel model;
  model.C = C;
  bool converged = false;
  bool stalled = false;
  size_t steps = 0;
  double b_up = 0.0, b_low = 0.0;

  while (true) {
    // Most violating pair: smallest F among I_up, largest among I_low.
    size_t i_up = n, i_low = n;
    b_up = std::numeric_limits<double>::infinity();
    b_low = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n; ++j) {
      if (in_up(j) && F[j] < b_up) {
        b_up = F[j];
        i_up = j;
      }
      if (in_low(j) && F[j] > b_low) {
        b_low = F[j];
        i_low = j;
      }
    }
    if (i_up == n || i_low == n || b_low - b_up <= 2.0 * tol) {
      converged = true;
      break;
    }
    if (steps >= max_passes) break;
    ++steps;

    // Optimize the pair (1 = i_low, 2 = i_up) along the equality constraint.
    const size_t j1 = i_low, j2 = i_up;
    const double y1 = labels[j1], y2 = labels[j2];
    const double s = y1 * y2;
    const double a1 = alpha[j1], a2 = alpha[j2];
    double L, H;
    if (s < 0.0) {
      L = std::max(0.0, a2 - a1);
      H = std::min(C, C + a2 - a1);
    } else {
      L = std::max(0.0, a1 + a2 - C);
      H = std::min(C, a1 + a2);
    }
    const double k11 = self_dot[j1], k22 = self_dot[j2], k12 = docs[j1].dot(docs[j2]);
    const double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 0.0) {
      a2_new = std::clamp(a2 + y2 * (F[j1] - F[j2]) / eta, L, H);
    } else {
      // Flat (or degenerate) direction: compare the dual objective at both
      // ends of the feasible segment; ties keep the lower end.
      const double v1 = dot_dense(w, docs[j1]) - a1 * y1 * k11 - a2 * y2 * k12;
      const double v2 = dot_dense(w, docs[j2]) - a1 * y1 * k12 - a2 * y2 * k22;
      auto objective = [&](double t) {
        const double t1 = a1 + s * (a2 - t);
        return t1 + t -
               0.5 * (t1 * t1 * k11 + t * t * k22 + 2.0 * s * t1 * t * k12) -
               t1 * y1 * v1 - t * y2 * v2;
      };
      const double obj_l = objective(L), obj_h = objective(H);
      a2_new = obj_h > obj_l + 1e-12 ? H : L;
    }
    // Snap to the box edges so endpoint steps leave exact 0 / C, not residuals
    // that keep a point in the index sets with no room to move.
    const double kSnap = 1e-8 * C;
    if (a2_new < kSnap)
      a2_new = 0.0;
    else if (a2_new > C - kSnap)
      a2_new = C;
    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < kSnap)
      a1_new = 0.0;
    else if (a1_new > C - kSnap)
      a1_new = C;
    const double d2 = a2_new - a2;
    if (std::abs(d2) < 1e-12) {  // pair numerically stuck; stop rather than crawl
      stalled = true;
      break;
    }
    const double d1 = a1_new - a1;
    alpha[j1] = a1_new;
    alpha[j2] = a2_new;

    for (const auto& [id, x] : docs[j1].entries) w[id] += y1 * d1 * x;
    for (const auto& [id, x] : docs[j2].entries) w[id] += y2 * d2 * x;
    for (size_t j = 0; j < n; ++j) F[j] = dot_dense(w, docs[j]) - labels[j];
  }

  model.pair_steps = steps;
  model.converged = converged;
  if (!converged)
    diag::warn(std::string("svm: ") +
               (stalled ? "working pair stalled" : "pair-step budget exhausted") +
               " before KKT satisfaction (" + std::to_string(steps) + " steps)");
  if (std::isfinite(b_up) && std::isfinite(b_low))
    model.b = -0.5 * (b_up + b_low);

  // Snap vanishing alphas and rebuild w from the final multipliers; the
  // incremental w accumulates rounding over many steps.
  for (auto& a : alpha)
    if (a < 1e-12) a = 0.0;
  std::vector<double> w_exact(dim, 0.0);
  for (size_t j = 0; j < n; ++j) {
    if (alpha[j] == 0.0) continue;
    for (const auto& [id, x] : docs[j].entries) w_exact[id] += alpha[j] * labels[j] * x;
  }
  double drift = 0.0;
  for (size_t i = 0; i < dim; ++i) drift = std::max(drift, std::abs(w_exact[i] - w[i]));
  if (drift > 1e-9)
    diag::warn("svm: incremental weight drift " + std::to_string(drift) + " corrected");

  model.alpha = std::move(alpha);
  model.labels = labels;
  model.doc_ids.reserve(n);
  for (const auto& d : docs) model.doc_ids.push_back(d.doc_id);
  model.w = std::move(w_exact);
  for (size_t j = 0; j < n; ++j)
    if (model.alpha[j] > 0.0) model.support_indices.push_back(j);
  return model;
}

double svm_decision(const SvmModel& model, const SparseVec& v) {
  for (const auto& [id, x] : v.entries)
    if (id >= model.w.size())
      throw std::invalid_argument("feature id outside model dimension");
  return dot_dense(model.w, v) + model.b;
}

Polarity svm_classify(const SvmModel& model, const SparseVec& v) {
  return svm_decision(model, v) >= 0.0 ? Polarity::Pos : Polarity::Neg;
}

std::string SvmModel::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "svm";
  j["version"] = 1;
  j["C"] = C;
  j["b"] = b;
  j["converged"] = converged;
  j["pair_steps"] = pair_steps;
  nlohmann::ordered_json sparse_w = nlohmann::ordered_json::array();
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) sparse_w.push_back({i, w[i]});
  j["w"] = std::move(sparse_w);
  j["dim"] = w.size();
  nlohmann::ordered_json svs = nlohmann::ordered_json::array();
  for (size_t idx : support_indices)
    svs.push_back({{"doc", doc_ids[idx]}, {"alpha", alpha[idx]}, {"label", labels[idx]}});
  j["support_vectors"] = std::move(svs);
  return j.dump(2);
}

}  // namespace polarity
