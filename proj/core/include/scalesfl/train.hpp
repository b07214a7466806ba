#pragma once

#include <cstdint>
#include <vector>

#include "scalesfl/dataset.hpp"
#include "scalesfl/model.hpp"
#include "scalesfl/weights.hpp"

namespace scalesfl {

struct Hyperparams {
  double learning_rate = 0.01;
  std::size_t batch_size = 10;
  std::size_t local_epochs = 1;
  bool dp_enabled = false;
  double dp_max_grad_norm = 1.2;
  double dp_noise_multiplier = 0.4;

  void validate(std::size_t dataset_size) const;
};

struct LocalUpdateResult {
  WeightVector new_weights;
  std::uint64_t sample_count = 0;
  double train_loss = 0.0;  // mean loss over the client's data at new_weights

  bool operator==(const LocalUpdateResult&) const = default;
};

struct EvalResult {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Clips each per-sample gradient to L2 norm <= max_norm, averages, and adds
/// per-coordinate Gaussian noise with std = noise_mult * max_norm / count.
WeightVector dp_clip_and_noise(const std::vector<WeightVector>& per_sample_grads,
                               double max_norm, double noise_mult, Rng& rng);
WeightVector dp_clip_and_noise(const std::vector<WeightVector>& per_sample_grads,
                               double max_norm, double noise_mult, std::uint64_t rng_seed);

/// E epochs of minibatch SGD from `start`; with DP enabled, per-sample
/// gradients are clipped and each batch gradient is noised. Deterministic
/// given rng_seed. Throws on dimension mismatch or non-finite gradients.
LocalUpdateResult local_train(const Model& model, const WeightVector& start,
                              const LabeledDataset& data, const Hyperparams& hp,
                              std::uint64_t rng_seed);

/// Mean per-example loss and argmax accuracy. Pure.
EvalResult evaluate(const Model& model, const WeightVector& w, const LabeledDataset& data);

}  // namespace scalesfl
