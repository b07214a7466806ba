#include "scalesfl/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scalesfl/rng.hpp"

namespace scalesfl {

namespace {

double log_sum_exp(std::span<const double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double v : z) s += std::exp(v - m);
  return m + std::log(s);
}

int argmax(std::span<const double> z) {
  return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

}  // namespace

void Model::check_dims(const WeightVector& w, const LabeledDataset& data) const {
  if (w.dim() != param_count()) {
    throw std::invalid_argument("model: weight dim " + std::to_string(w.dim()) +
                                " != param count " + std::to_string(param_count()));
  }
  if (!data.examples.empty() && data.feature_dim() != feature_dim()) {
    throw std::invalid_argument("model: dataset feature dim mismatch");
  }
}

LogisticRegression::LogisticRegression(std::size_t feature_dim, int class_count)
    : features_(feature_dim), classes_(class_count) {
  if (feature_dim == 0 || class_count < 2) {
    throw std::invalid_argument("logreg: need features >= 1 and classes >= 2");
  }
}

std::size_t LogisticRegression::param_count() const {
  return static_cast<std::size_t>(classes_) * (features_ + 1);
}

void LogisticRegression::logits(const WeightVector& w, const Example& ex,
                                std::span<double> out) const {
  const std::size_t C = static_cast<std::size_t>(classes_);
  const double* bias = w.values.data() + C * features_;
  for (std::size_t c = 0; c < C; ++c) {
    const double* row = w.values.data() + c * features_;
    double z = bias[c];
    for (std::size_t d = 0; d < features_; ++d) z += row[d] * ex.features[d];
    out[c] = z;
  }
}

double LogisticRegression::loss(const WeightVector& w, const Example& ex) const {
  std::vector<double> z(static_cast<std::size_t>(classes_));
  logits(w, ex, z);
  return log_sum_exp(z) - z[static_cast<std::size_t>(ex.label)];
}

void LogisticRegression::loss_grad(const WeightVector& w, const Example& ex,
                                   std::span<double> grad) const {
  const std::size_t C = static_cast<std::size_t>(classes_);
  std::vector<double> z(C);
  logits(w, ex, z);
  const double lse = log_sum_exp(z);
  for (std::size_t c = 0; c < C; ++c) {
    const double p = std::exp(z[c] - lse) - (static_cast<int>(c) == ex.label ? 1.0 : 0.0);
    double* row = grad.data() + c * features_;
    for (std::size_t d = 0; d < features_; ++d) row[d] = p * ex.features[d];
    grad[C * features_ + c] = p;
  }
}

int LogisticRegression::predict(const WeightVector& w, const Example& ex) const {
  std::vector<double> z(static_cast<std::size_t>(classes_));
  logits(w, ex, z);
  return argmax(z);
}

Mlp::Mlp(std::size_t feature_dim, std::size_t hidden_width, int class_count)
    : features_(feature_dim), hidden_(hidden_width), classes_(class_count) {
  if (feature_dim == 0 || hidden_width == 0 || class_count < 2) {
    throw std::invalid_argument("mlp: invalid architecture");
  }
}

std::size_t Mlp::param_count() const {
  const std::size_t C = static_cast<std::size_t>(classes_);
  return hidden_ * features_ + hidden_ + C * hidden_ + C;
}

struct Mlp::Forward {
  std::vector<double> h;  // tanh activations
  std::vector<double> z;  // output logits
};

void Mlp::forward(const WeightVector& w, const Example& ex, Forward& f) const {
  const std::size_t C = static_cast<std::size_t>(classes_);
  const double* W1 = w.values.data();
  const double* b1 = W1 + hidden_ * features_;
  const double* W2 = b1 + hidden_;
  const double* b2 = W2 + C * hidden_;
  f.h.resize(hidden_);
  f.z.resize(C);
  for (std::size_t j = 0; j < hidden_; ++j) {
    const double* row = W1 + j * features_;
    double a = b1[j];
    for (std::size_t d = 0; d < features_; ++d) a += row[d] * ex.features[d];
    f.h[j] = std::tanh(a);
  }
  for (std::size_t c = 0; c < C; ++c) {
    const double* row = W2 + c * hidden_;
    double z = b2[c];
    for (std::size_t j = 0; j < hidden_; ++j) z += row[j] * f.h[j];
    f.z[c] = z;
  }
}

double Mlp::loss(const WeightVector& w, const Example& ex) const {
  Forward f;
  forward(w, ex, f);
  return log_sum_exp(f.z) - f.z[static_cast<std::size_t>(ex.label)];
}

void Mlp::loss_grad(const WeightVector& w, const Example& ex, std::span<double> grad) const {
  const std::size_t C = static_cast<std::size_t>(classes_);
  Forward f;
  forward(w, ex, f);
  const double lse = log_sum_exp(f.z);

  std::vector<double> dz(C);
  for (std::size_t c = 0; c < C; ++c) {
    dz[c] = std::exp(f.z[c] - lse) - (static_cast<int>(c) == ex.label ? 1.0 : 0.0);
  }

  const double* W2 = w.values.data() + hidden_ * features_ + hidden_;
  double* gW1 = grad.data();
  double* gb1 = gW1 + hidden_ * features_;
  double* gW2 = gb1 + hidden_;
  double* gb2 = gW2 + C * hidden_;

  for (std::size_t c = 0; c < C; ++c) {
    double* row = gW2 + c * hidden_;
    for (std::size_t j = 0; j < hidden_; ++j) row[j] = dz[c] * f.h[j];
    gb2[c] = dz[c];
  }
  for (std::size_t j = 0; j < hidden_; ++j) {
    double dh = 0.0;
    for (std::size_t c = 0; c < C; ++c) dh += dz[c] * W2[c * hidden_ + j];
    const double da = dh * (1.0 - f.h[j] * f.h[j]);
    double* row = gW1 + j * features_;
    for (std::size_t d = 0; d < features_; ++d) row[d] = da * ex.features[d];
    gb1[j] = da;
  }
}

int Mlp::predict(const WeightVector& w, const Example& ex) const {
  Forward f;
  forward(w, ex, f);
  return argmax(f.z);
}

std::unique_ptr<Model> make_model(const std::string& kind, std::size_t feature_dim,
                                  int class_count, std::size_t hidden_width) {
  if (kind == "logreg") return std::make_unique<LogisticRegression>(feature_dim, class_count);
  if (kind == "mlp") return std::make_unique<Mlp>(feature_dim, hidden_width, class_count);
  throw std::invalid_argument("unknown model kind: " + kind);
}

WeightVector initial_weights(const Model& model, std::uint64_t seed) {
  WeightVector w = WeightVector::zeros(model.param_count());
  if (dynamic_cast<const Mlp*>(&model) != nullptr) {
    Rng rng = derive_stream(seed, "init");
    for (auto& v : w.values) v = 0.1 * rng.normal();
  }
  return w;
}

}  // namespace scalesfl
