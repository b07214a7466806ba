#include "scalesfl/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scalesfl/train.hpp"

namespace scalesfl {

void PolicyConfig::validate() const {
  switch (kind) {
    case PolicyKind::accept_all:
      break;
    case PolicyKind::norm_bound:
      if (!(max_norm > 0.0)) throw std::invalid_argument("policy norm_bound: max_norm must be > 0");
      break;
    case PolicyKind::roni:
      if (!(roni_drop_threshold >= 0.0)) {
        throw std::invalid_argument("policy roni: drop threshold must be >= 0");
      }
      break;
    case PolicyKind::multi_krum:
      break;  // f/m are validated against n at evaluation time
    case PolicyKind::fools_gold:
      if (!(foolsgold_weight_threshold >= 0.0 && foolsgold_weight_threshold <= 1.0)) {
        throw std::invalid_argument("policy fools_gold: weight threshold must be in [0,1]");
      }
      break;
    case PolicyKind::pn_correlate:
      if (!(pn_threshold > -1.0 && pn_threshold <= 1.0)) {
        throw std::invalid_argument("policy pn_correlate: threshold must be in (-1,1]");
      }
      break;
  }
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "accept_all") return PolicyKind::accept_all;
  if (s == "norm_bound") return PolicyKind::norm_bound;
  if (s == "roni") return PolicyKind::roni;
  if (s == "multi_krum") return PolicyKind::multi_krum;
  if (s == "fools_gold") return PolicyKind::fools_gold;
  if (s == "pn_correlate") return PolicyKind::pn_correlate;
  throw std::invalid_argument("unknown policy kind: " + s);
}

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::accept_all: return "accept_all";
    case PolicyKind::norm_bound: return "norm_bound";
    case PolicyKind::roni: return "roni";
    case PolicyKind::multi_krum: return "multi_krum";
    case PolicyKind::fools_gold: return "fools_gold";
    case PolicyKind::pn_correlate: return "pn_correlate";
  }
  return "?";
}

PolicyVerdict norm_bound_check(const WeightVector& update, const WeightVector& reference,
                               double max_norm) {
  if (update.dim() != reference.dim()) {
    throw std::invalid_argument("norm_bound_check: dim mismatch");
  }
  if (!(max_norm > 0.0)) throw std::invalid_argument("norm_bound_check: max_norm must be > 0");
  const double norm = l2_distance(update, reference);
  if (norm <= max_norm) return PolicyVerdict::accepted(norm);
  return PolicyVerdict::rejected(norm, "norm_exceeded");
}

PolicyVerdict roni_check(const Model& model, const WeightVector& update,
                         const WeightVector& current_global, const LabeledDataset& heldout,
                         double drop_threshold) {
  if (heldout.examples.empty()) throw std::invalid_argument("roni_check: empty held-out set");
  const double acc_update = evaluate(model, update, heldout).accuracy;
  const double acc_global = evaluate(model, current_global, heldout).accuracy;
  const double delta = acc_update - acc_global;
  if (acc_update >= acc_global - drop_threshold) return PolicyVerdict::accepted(delta);
  return PolicyVerdict::rejected(delta, "negative_influence");
}

std::vector<std::size_t> multi_krum_select(const std::vector<WeightVector>& updates,
                                           std::size_t f, std::size_t m) {
  const std::size_t n = updates.size();
  if (n < f + 3) throw std::invalid_argument("multi_krum_select: need n >= f + 3");
  if (m < 1 || m > n - f) throw std::invalid_argument("multi_krum_select: need 1 <= m <= n - f");
  const std::size_t dim = updates.front().dim();
  for (const auto& u : updates) {
    if (u.dim() != dim) throw std::invalid_argument("multi_krum_select: dim mismatch");
  }

  const std::size_t neighbors = n - f - 2;
  std::vector<double> scores(n, 0.0);
  std::vector<double> dists;
  dists.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    dists.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dists.push_back(squared_distance(updates[i], updates[j]));
    }
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(neighbors) - 1,
                     dists.end());
    KahanAccumulator acc;
    for (std::size_t q = 0; q < neighbors; ++q) acc.add(dists[q]);
    scores[i] = acc.sum;
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return a < b;
  });
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<double> fools_gold_weights(const std::vector<WeightVector>& accumulated) {
  const std::size_t n = accumulated.size();
  if (n < 2) throw std::invalid_argument("fools_gold_weights: need >= 2 clients");
  const std::size_t dim = accumulated.front().dim();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (accumulated[i].dim() != dim) throw std::invalid_argument("fools_gold_weights: dim mismatch");
    norms[i] = l2_norm(accumulated[i]);
  }

  // pairwise cosine similarity; zero-norm clients are flagged and zero-weighted
  std::vector<std::vector<double>> cs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sim = 0.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        KahanAccumulator dot;
        for (std::size_t d = 0; d < dim; ++d) dot.add(accumulated[i][d] * accumulated[j][d]);
        sim = dot.sum / (norms[i] * norms[j]);
      }
      cs[i][j] = cs[j][i] = sim;
    }
  }

  std::vector<double> vmax(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) v = std::max(v, cs[i][j]);
    }
    vmax[i] = v;
  }

  // pardoning: scale cs_ij down when j looks more suspicious than i
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (vmax[j] > vmax[i] && vmax[j] > 0.0) cs[i][j] *= vmax[i] / vmax[j];
    }
  }

  std::vector<double> wv(n);
  double biggest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) v = std::max(v, cs[i][j]);
    }
    wv[i] = std::clamp(1.0 - v, 0.0, 1.0);
    biggest = std::max(biggest, wv[i]);
  }
  if (biggest > 0.0) {
    for (auto& v : wv) v /= biggest;
  }

  // logit sharpening, clamped back to [0,1]
  for (std::size_t i = 0; i < n; ++i) {
    double v = wv[i];
    if (v >= 1.0) v = 0.99;
    if (v <= 0.0) {
      wv[i] = 0.0;
      continue;
    }
    v = std::log(v / (1.0 - v)) + 0.5;
    wv[i] = std::clamp(v, 0.0, 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] <= 0.0) wv[i] = 0.0;  // reason code: zero_history
  }
  return wv;
}

void FoolsGoldHistory::add_round(std::vector<WeightVector> updates) {
  if (updates.size() != clients_) {
    throw std::invalid_argument("FoolsGoldHistory: wrong client count");
  }
  rounds_.push_back(std::move(updates));
  if (window_ > 0 && rounds_.size() > window_) rounds_.pop_front();
}

std::vector<WeightVector> FoolsGoldHistory::accumulated() const {
  std::vector<WeightVector> acc(clients_);
  if (rounds_.empty()) return acc;
  const std::size_t dim = rounds_.front().front().dim();
  for (auto& a : acc) a = WeightVector::zeros(dim);
  for (const auto& round : rounds_) {
    for (std::size_t c = 0; c < clients_; ++c) {
      for (std::size_t d = 0; d < dim; ++d) acc[c][d] += round[c][d];
    }
  }
  return acc;
}

}  // namespace scalesfl
