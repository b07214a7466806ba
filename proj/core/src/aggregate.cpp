#include "scalesfl/aggregate.hpp"

#include <stdexcept>

namespace scalesfl {

namespace {

WeightVector weighted_mean(std::span<const WeightVector* const> vectors,
                           std::span<const std::uint64_t> counts) {
  if (vectors.empty()) throw std::invalid_argument("aggregate: empty input");
  const std::size_t dim = vectors.front()->dim();
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k]->dim() != dim) throw std::invalid_argument("aggregate: dim mismatch");
    if (counts[k] == 0) throw std::invalid_argument("aggregate: zero sample count");
    total += counts[k];
  }
  WeightVector out = WeightVector::zeros(dim);
  std::vector<KahanAccumulator> acc(dim);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const double weight = static_cast<double>(counts[k]) / static_cast<double>(total);
    const auto& w = *vectors[k];
    for (std::size_t i = 0; i < dim; ++i) acc[i].add(weight * w[i]);
  }
  for (std::size_t i = 0; i < dim; ++i) out[i] = acc[i].sum;
  return out;
}

}  // namespace

WeightVector aggregate_shard(std::span<const LocalUpdateResult> updates) {
  std::vector<const WeightVector*> vecs;
  std::vector<std::uint64_t> counts;
  vecs.reserve(updates.size());
  counts.reserve(updates.size());
  for (const auto& u : updates) {
    vecs.push_back(&u.new_weights);
    counts.push_back(u.sample_count);
  }
  return weighted_mean(vecs, counts);
}

WeightVector aggregate_global(
    std::span<const std::pair<WeightVector, std::uint64_t>> shard_models) {
  std::vector<const WeightVector*> vecs;
  std::vector<std::uint64_t> counts;
  vecs.reserve(shard_models.size());
  counts.reserve(shard_models.size());
  for (const auto& [w, n] : shard_models) {
    vecs.push_back(&w);
    counts.push_back(n);
  }
  return weighted_mean(vecs, counts);
}

}  // namespace scalesfl
