#pragma once

#include <memory>
#include <span>
#include <string>

#include "scalesfl/dataset.hpp"
#include "scalesfl/weights.hpp"

namespace scalesfl {

/// Differentiable classifier over a flat parameter vector.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::size_t param_count() const = 0;
  virtual std::size_t feature_dim() const = 0;
  virtual int class_count() const = 0;

  /// Per-example loss at weights w. Must be >= 0 and finite for finite inputs.
  virtual double loss(const WeightVector& w, const Example& ex) const = 0;

  /// Writes the per-example loss gradient into grad (grad.size() == param_count()).
  virtual void loss_grad(const WeightVector& w, const Example& ex,
                         std::span<double> grad) const = 0;

  /// Argmax class prediction.
  virtual int predict(const WeightVector& w, const Example& ex) const = 0;

  void check_dims(const WeightVector& w, const LabeledDataset& data) const;
};

/// Multinomial logistic regression: W (classes x features) + bias, flattened
/// row-major with biases last. Cross-entropy loss via log-sum-exp.
class LogisticRegression final : public Model {
 public:
  LogisticRegression(std::size_t feature_dim, int class_count);

  std::size_t param_count() const override;
  std::size_t feature_dim() const override { return features_; }
  int class_count() const override { return classes_; }
  double loss(const WeightVector& w, const Example& ex) const override;
  void loss_grad(const WeightVector& w, const Example& ex, std::span<double> grad) const override;
  int predict(const WeightVector& w, const Example& ex) const override;

 private:
  void logits(const WeightVector& w, const Example& ex, std::span<double> out) const;
  std::size_t features_;
  int classes_;
};

/// One-hidden-layer perceptron with tanh activation and cross-entropy loss.
/// Layout: W1 (hidden x features), b1, W2 (classes x hidden), b2.
class Mlp final : public Model {
 public:
  Mlp(std::size_t feature_dim, std::size_t hidden_width, int class_count);

  std::size_t param_count() const override;
  std::size_t feature_dim() const override { return features_; }
  int class_count() const override { return classes_; }
  std::size_t hidden_width() const { return hidden_; }
  double loss(const WeightVector& w, const Example& ex) const override;
  void loss_grad(const WeightVector& w, const Example& ex, std::span<double> grad) const override;
  int predict(const WeightVector& w, const Example& ex) const override;

 private:
  struct Forward;
  void forward(const WeightVector& w, const Example& ex, Forward& f) const;
  std::size_t features_;
  std::size_t hidden_;
  int classes_;
};

/// Builds a model by kind name ("logreg" or "mlp").
std::unique_ptr<Model> make_model(const std::string& kind, std::size_t feature_dim,
                                  int class_count, std::size_t hidden_width = 32);

/// Small deterministic non-zero init for the MLP (logreg trains fine from 0,
/// a tanh MLP needs broken symmetry).
WeightVector initial_weights(const Model& model, std::uint64_t seed);

}  // namespace scalesfl
