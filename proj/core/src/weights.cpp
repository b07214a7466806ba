#include "scalesfl/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scalesfl {

bool WeightVector::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const WeightVector& w, const char* context) {
  if (!w.all_finite()) {
    throw std::invalid_argument(std::string(context) + ": weight vector contains NaN/Inf");
  }
}

double l2_norm(std::span<const double> v) {
  KahanAccumulator acc;
  for (double x : v) acc.add(x * x);
  return std::sqrt(acc.sum);
}

double squared_distance(const WeightVector& a, const WeightVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("squared_distance: dimension mismatch");
  }
  KahanAccumulator acc;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc.add(d * d);
  }
  return acc.sum;
}

double l2_distance(const WeightVector& a, const WeightVector& b) {
  return std::sqrt(squared_distance(a, b));
}

bool pearson(std::span<const double> a, std::span<const double> b, double& out) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("pearson: size mismatch or empty input");
  }
  const double n = static_cast<double>(a.size());
  KahanAccumulator ma, mb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma.add(a[i]);
    mb.add(b[i]);
  }
  const double mean_a = ma.sum / n;
  const double mean_b = mb.sum / n;
  KahanAccumulator cov, va, vb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov.add(da * db);
    va.add(da * da);
    vb.add(db * db);
  }
  if (va.sum <= 0.0 || vb.sum <= 0.0) return false;
  out = cov.sum / std::sqrt(va.sum * vb.sum);
  return true;
}

}  // namespace scalesfl
