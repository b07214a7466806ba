#include "scalesfl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace scalesfl {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  // 53 random bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be > 0");
  // rejection sampling to avoid modulo bias
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Rng::gamma(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("Rng::gamma: alpha must be > 0");
  if (alpha < 1.0) {
    // boost: G(a) = G(a+1) * U^(1/a)
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> Rng::dirichlet_symmetric(double alpha, std::size_t k) {
  if (k == 0) throw std::invalid_argument("dirichlet: k must be > 0");
  std::vector<double> out(k);
  double sum = 0.0;
  for (auto& g : out) {
    g = gamma(alpha);
    sum += g;
  }
  if (sum <= 0.0) {
    // all-zero draw is astronomically unlikely; fall back to uniform
    for (auto& g : out) g = 1.0 / static_cast<double>(k);
    return out;
  }
  for (auto& g : out) g /= sum;
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::initializer_list<std::uint64_t> ids) {
  // FNV-1a over the tag, then splitmix-fold the master and each id
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t s = h;
  h ^= splitmix64(s) ^ master;
  for (std::uint64_t id : ids) {
    std::uint64_t t = h + 0x9E3779B97F4A7C15ULL * (id + 1);
    h = splitmix64(t);
  }
  return h;
}

}  // namespace scalesfl
