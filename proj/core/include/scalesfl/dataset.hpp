#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace scalesfl {

struct Example {
  std::vector<double> features;
  int label = 0;
};

/// Labeled classification dataset; all feature vectors share one dimension.
struct LabeledDataset {
  std::vector<Example> examples;
  int class_count = 0;

  std::size_t size() const { return examples.size(); }
  std::size_t feature_dim() const { return examples.empty() ? 0 : examples.front().features.size(); }

  /// Throws std::invalid_argument on empty data, ragged features, or labels
  /// outside [0, class_count).
  void validate() const;
};

enum class PartitionMode { iid, label_skew };

/// Splits `data` into k disjoint client datasets covering the input.
/// iid: seeded shuffle, near-equal split. label_skew: for each class, a
/// Dirichlet(alpha) draw over clients decides how that class's examples are
/// distributed; every client is guaranteed at least one example.
std::vector<LabeledDataset> partition_dataset(const LabeledDataset& data, std::size_t k,
                                              PartitionMode mode, std::uint64_t seed,
                                              double alpha = 0.5);

/// Synthetic Gaussian-mixture classification task: class c is drawn from
/// N(mu_c, sigma^2 I) with unit-norm mean directions scaled by separation/2.
LabeledDataset make_gaussian_mixture(int class_count, std::size_t feature_dim,
                                     std::size_t example_count, double separation,
                                     double sigma, std::uint64_t seed);

/// CSV layout: header row required; every column but the last is a real
/// feature, the last column is an integer class label.
LabeledDataset load_csv(const std::filesystem::path& path);
void save_csv(const LabeledDataset& data, const std::filesystem::path& path);

/// Deterministic train/test split (seeded shuffle, train_fraction first).
std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed);

}  // namespace scalesfl
