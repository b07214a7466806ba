#pragma once

#include <cstdint>

#include "scalesfl/policies.hpp"
#include "scalesfl/weights.hpp"

namespace scalesfl {

/// Pseudo-noise commitment: seed expands to a deterministic +-1 sequence of
/// any dimension, scaled by sigma and added to a model update. Correlation
/// against the published sequence later exposes plagiarized updates.
struct PnCommitment {
  std::uint64_t seed = 0;
  double sigma = 1.0;  // must be > 0
};

/// Deterministic +-1 pseudo-noise vector for (seed, dim); element i depends
/// only on (seed, i).
WeightVector pn_sequence(std::uint64_t seed, std::size_t dim);

/// update + sigma * s(seed, dim).
WeightVector pn_commit(const WeightVector& update, const PnCommitment& c);

/// Pearson correlation between (submitted - claimed_base) and s(seed, dim);
/// accept iff correlation >= threshold. Zero-variance residual rejects.
PolicyVerdict pn_correlate(const WeightVector& submitted, const WeightVector& claimed_base,
                           const PnCommitment& c, double threshold = 0.2);

}  // namespace scalesfl
