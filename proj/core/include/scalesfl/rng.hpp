#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace scalesfl {

/// Deterministic, platform-independent random stream (SplitMix64 core).
/// Every randomized operation in the library draws from one of these so that
/// identical seeds reproduce identical results bit for bit, regardless of
/// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform double in [a, b).
  double uniform(double a, double b);

  /// Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller (pair-cached).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Gamma(alpha, 1) via Marsaglia-Tsang; alpha > 0.
  double gamma(double alpha);

  /// Dirichlet(alpha, ..., alpha) of length k; components sum to 1.
  std::vector<double> dirichlet_symmetric(double alpha, std::size_t k);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a master seed, a domain tag, and integer ids into a stream seed.
/// Streams with distinct (tag, ids) are independent for practical purposes;
/// the derivation is order-sensitive and stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::initializer_list<std::uint64_t> ids = {});

inline Rng derive_stream(std::uint64_t master, std::string_view tag,
                         std::initializer_list<std::uint64_t> ids = {}) {
  return Rng(derive_seed(master, tag, ids));
}

}  // namespace scalesfl
