#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "scalesfl/dataset.hpp"
#include "scalesfl/model.hpp"
#include "scalesfl/weights.hpp"

namespace scalesfl {

enum class Decision { accept, reject };

/// Outcome of one acceptance-policy evaluation by an endorsing peer.
struct PolicyVerdict {
  Decision decision = Decision::reject;
  double score = 0.0;     // policy-specific diagnostic
  std::string reason;     // non-empty on reject

  static PolicyVerdict accepted(double score, std::string reason = "") {
    return {Decision::accept, score, std::move(reason)};
  }
  static PolicyVerdict rejected(double score, std::string reason) {
    return {Decision::reject, score, std::move(reason)};
  }
  bool accept() const { return decision == Decision::accept; }
};

enum class PolicyKind { accept_all, norm_bound, roni, multi_krum, fools_gold, pn_correlate };

/// One entry of a task's policy chain; an update must pass every entry.
struct PolicyConfig {
  PolicyKind kind = PolicyKind::accept_all;
  double max_norm = 10.0;               // norm_bound
  double roni_drop_threshold = 0.02;    // roni
  std::size_t krum_f = 1;               // multi_krum
  std::size_t krum_m = 0;               // multi_krum; 0 = auto (n - f)
  std::size_t foolsgold_history_len = 0;  // fools_gold; 0 = unbounded
  double foolsgold_weight_threshold = 0.5;
  double pn_threshold = 0.2;            // pn_correlate

  void validate() const;
};

PolicyKind policy_kind_from_string(const std::string& s);
std::string to_string(PolicyKind k);

/// Accept iff ||update - reference||_2 <= max_norm (boundary accepts).
PolicyVerdict norm_bound_check(const WeightVector& update, const WeightVector& reference,
                               double max_norm);

/// Reject-on-negative-influence: accept iff the update's held-out accuracy is
/// no more than drop_threshold below the current global model's.
PolicyVerdict roni_check(const Model& model, const WeightVector& update,
                         const WeightVector& current_global, const LabeledDataset& heldout,
                         double drop_threshold);

/// Multi-Krum selection: score_i = sum of squared distances to the n-f-2
/// nearest other updates; returns the m lowest-scoring indices (ascending),
/// ties broken by lower index. Requires n >= f + 3 and 1 <= m <= n - f.
std::vector<std::size_t> multi_krum_select(const std::vector<WeightVector>& updates,
                                           std::size_t f, std::size_t m);

/// FoolsGold learning weights in [0,1] from per-client accumulated updates:
/// pairwise cosine similarity, pardoning rescale, max-renormalization, and
/// logit sharpening. Duplicate histories go to 0, orthogonal ones to 1.
/// Clients with a zero-norm accumulated vector get weight 0.
std::vector<double> fools_gold_weights(const std::vector<WeightVector>& accumulated);

/// Sliding-window accumulation of per-client updates for FoolsGold.
/// window_len == 0 keeps the full history.
class FoolsGoldHistory {
 public:
  FoolsGoldHistory(std::size_t client_count, std::size_t window_len)
      : window_(window_len), rounds_(), clients_(client_count) {}

  std::size_t client_count() const { return clients_; }

  /// One vector per client, in client order.
  void add_round(std::vector<WeightVector> updates);

  /// Sum over the window per client; zero vector for clients with no history.
  std::vector<WeightVector> accumulated() const;

  std::vector<double> weights() const { return fools_gold_weights(accumulated()); }

 private:
  std::size_t window_;
  std::deque<std::vector<WeightVector>> rounds_;
  std::size_t clients_;
};

}  // namespace scalesfl
