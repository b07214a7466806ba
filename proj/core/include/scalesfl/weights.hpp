#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scalesfl {

/// Flat dense vector of model parameters. The carrier of all FL math.
struct WeightVector {
  std::vector<double> values;

  WeightVector() = default;
  explicit WeightVector(std::vector<double> v) : values(std::move(v)) {}

  static WeightVector zeros(std::size_t dim) {
    return WeightVector(std::vector<double>(dim, 0.0));
  }

  std::size_t dim() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  bool all_finite() const;

  bool operator==(const WeightVector& other) const = default;
};

/// Throws std::invalid_argument when the vector contains NaN/Inf.
void require_finite(const WeightVector& w, const char* context);

double l2_norm(std::span<const double> v);
inline double l2_norm(const WeightVector& w) { return l2_norm(std::span<const double>(w.values)); }

double squared_distance(const WeightVector& a, const WeightVector& b);
double l2_distance(const WeightVector& a, const WeightVector& b);

/// Pearson correlation of two equal-length vectors. Returns false when either
/// side has zero variance (correlation undefined).
bool pearson(std::span<const double> a, std::span<const double> b, double& out);

/// Compensated (Kahan) accumulator; keeps weighted sums accurate enough for
/// the 1e-9 aggregation-composition tolerance.
struct KahanAccumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace scalesfl
