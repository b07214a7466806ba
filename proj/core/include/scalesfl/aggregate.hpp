#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scalesfl/train.hpp"
#include "scalesfl/weights.hpp"

namespace scalesfl {

/// Sample-count-weighted mean of client updates, normalized within the shard:
/// sum_k (|D_k| / sum_j |D_j|) * w_k. Kahan-compensated per coordinate.
WeightVector aggregate_shard(std::span<const LocalUpdateResult> updates);

/// Weighted mean of shard models by shard sample counts:
/// sum_s (|D_s| / sum_t |D_t|) * w_s.
WeightVector aggregate_global(
    std::span<const std::pair<WeightVector, std::uint64_t>> shard_models);

}  // namespace scalesfl
