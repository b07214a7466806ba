#include "scalesfl/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scalesfl/rng.hpp"

namespace scalesfl {

void Hyperparams::validate(std::size_t dataset_size) const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("hyperparams: learning_rate must be finite and >= 0");
  }
  if (batch_size == 0) throw std::invalid_argument("hyperparams: batch_size must be positive");
  if (dataset_size > 0 && batch_size > dataset_size) {
    throw std::invalid_argument("hyperparams: batch_size exceeds dataset size");
  }
  if (local_epochs == 0) throw std::invalid_argument("hyperparams: local_epochs must be positive");
  if (dp_enabled) {
    if (!(dp_max_grad_norm > 0.0)) {
      throw std::invalid_argument("hyperparams: dp_max_grad_norm must be > 0");
    }
    if (dp_noise_multiplier < 0.0) {
      throw std::invalid_argument("hyperparams: dp_noise_multiplier must be >= 0");
    }
  }
}

WeightVector dp_clip_and_noise(const std::vector<WeightVector>& per_sample_grads,
                               double max_norm, double noise_mult, Rng& rng) {
  if (per_sample_grads.empty()) {
    throw std::invalid_argument("dp_clip_and_noise: empty gradient list");
  }
  if (!(max_norm > 0.0)) throw std::invalid_argument("dp_clip_and_noise: max_norm must be > 0");
  const std::size_t dim = per_sample_grads.front().dim();
  const double count = static_cast<double>(per_sample_grads.size());

  WeightVector mean = WeightVector::zeros(dim);
  std::vector<KahanAccumulator> acc(dim);
  for (const auto& g : per_sample_grads) {
    if (g.dim() != dim) throw std::invalid_argument("dp_clip_and_noise: dim mismatch");
    double norm = l2_norm(g);
    double scale = (norm > max_norm) ? max_norm / norm : 1.0;
    if (scale < 1.0) {
      // guard the invariant against rounding when the scaled norm lands a ulp high
      for (int pass = 0; pass < 2 && norm * scale > max_norm; ++pass) {
        scale = std::nextafter(scale, 0.0);
      }
    }
    for (std::size_t i = 0; i < dim; ++i) acc[i].add(g[i] * scale);
  }
  const double std_dev = noise_mult * max_norm / count;
  for (std::size_t i = 0; i < dim; ++i) {
    mean[i] = acc[i].sum / count;
    if (std_dev > 0.0) mean[i] += rng.normal(0.0, std_dev);
  }
  return mean;
}

WeightVector dp_clip_and_noise(const std::vector<WeightVector>& per_sample_grads,
                               double max_norm, double noise_mult, std::uint64_t rng_seed) {
  Rng rng = derive_stream(rng_seed, "dp-noise");
  return dp_clip_and_noise(per_sample_grads, max_norm, noise_mult, rng);
}

LocalUpdateResult local_train(const Model& model, const WeightVector& start,
                              const LabeledDataset& data, const Hyperparams& hp,
                              std::uint64_t rng_seed) {
  data.validate();
  model.check_dims(start, data);
  require_finite(start, "local_train");
  hp.validate(data.size());

  const std::size_t dim = model.param_count();
  WeightVector w = start;
  Rng rng = derive_stream(rng_seed, "local-train");

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<WeightVector> batch_grads;
  WeightVector sample_grad = WeightVector::zeros(dim);

  for (std::size_t epoch = 0; epoch < hp.local_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += hp.batch_size) {
      const std::size_t end = std::min(begin + hp.batch_size, order.size());
      const std::size_t count = end - begin;

      WeightVector grad;
      if (hp.dp_enabled) {
        batch_grads.clear();
        for (std::size_t i = begin; i < end; ++i) {
          model.loss_grad(w, data.examples[order[i]], sample_grad.values);
          batch_grads.push_back(sample_grad);
        }
        grad = dp_clip_and_noise(batch_grads, hp.dp_max_grad_norm, hp.dp_noise_multiplier, rng);
      } else {
        std::vector<KahanAccumulator> acc(dim);
        for (std::size_t i = begin; i < end; ++i) {
          model.loss_grad(w, data.examples[order[i]], sample_grad.values);
          for (std::size_t d = 0; d < dim; ++d) acc[d].add(sample_grad[d]);
        }
        grad = WeightVector::zeros(dim);
        for (std::size_t d = 0; d < dim; ++d) grad[d] = acc[d].sum / static_cast<double>(count);
      }

      if (!grad.all_finite()) {
        throw std::runtime_error("local_train: non-finite gradient at epoch " +
                                 std::to_string(epoch) + ", batch offset " + std::to_string(begin));
      }
      for (std::size_t d = 0; d < dim; ++d) w[d] -= hp.learning_rate * grad[d];
    }
  }

  LocalUpdateResult result;
  result.sample_count = data.size();
  result.train_loss = evaluate(model, w, data).loss;
  result.new_weights = std::move(w);
  return result;
}

EvalResult evaluate(const Model& model, const WeightVector& w, const LabeledDataset& data) {
  data.validate();
  model.check_dims(w, data);
  KahanAccumulator loss_acc;
  std::size_t correct = 0;
  for (const auto& ex : data.examples) {
    loss_acc.add(model.loss(w, ex));
    if (model.predict(w, ex) == ex.label) ++correct;
  }
  EvalResult r;
  r.loss = loss_acc.sum / static_cast<double>(data.size());
  r.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return r;
}

}  // namespace scalesfl
