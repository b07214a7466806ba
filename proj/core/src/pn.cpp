#include "scalesfl/pn.hpp"

#include <stdexcept>

#include "scalesfl/rng.hpp"

namespace scalesfl {

WeightVector pn_sequence(std::uint64_t seed, std::size_t dim) {
  WeightVector s = WeightVector::zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t h = derive_seed(seed, "pn", {static_cast<std::uint64_t>(i)});
    s[i] = (h >> 63) ? 1.0 : -1.0;
  }
  return s;
}

WeightVector pn_commit(const WeightVector& update, const PnCommitment& c) {
  if (!(c.sigma > 0.0)) throw std::invalid_argument("pn_commit: sigma must be > 0");
  WeightVector out = update;
  const WeightVector s = pn_sequence(c.seed, update.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] += c.sigma * s[i];
  return out;
}

PolicyVerdict pn_correlate(const WeightVector& submitted, const WeightVector& claimed_base,
                           const PnCommitment& c, double threshold) {
  if (submitted.dim() != claimed_base.dim()) {
    throw std::invalid_argument("pn_correlate: dim mismatch");
  }
  std::vector<double> residual(submitted.dim());
  for (std::size_t i = 0; i < submitted.dim(); ++i) residual[i] = submitted[i] - claimed_base[i];
  const WeightVector s = pn_sequence(c.seed, submitted.dim());
  double corr = 0.0;
  if (!pearson(residual, s.values, corr)) {
    return PolicyVerdict::rejected(0.0, "zero_variance_residual");
  }
  if (corr >= threshold) return PolicyVerdict::accepted(corr);
  return PolicyVerdict::rejected(corr, "pn_uncorrelated");
}

}  // namespace scalesfl
