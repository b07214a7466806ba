#include "scalesfl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "scalesfl/rng.hpp"

namespace scalesfl {

void LabeledDataset::validate() const {
  if (examples.empty()) throw std::invalid_argument("dataset: empty");
  if (class_count <= 0) throw std::invalid_argument("dataset: class_count must be positive");
  const std::size_t dim = examples.front().features.size();
  for (const auto& ex : examples) {
    if (ex.features.size() != dim) {
      throw std::invalid_argument("dataset: ragged feature dimensions");
    }
    if (ex.label < 0 || ex.label >= class_count) {
      throw std::invalid_argument("dataset: label out of range [0, class_count)");
    }
    for (double f : ex.features) {
      if (!std::isfinite(f)) throw std::invalid_argument("dataset: non-finite feature");
    }
  }
}

std::vector<LabeledDataset> partition_dataset(const LabeledDataset& data, std::size_t k,
                                              PartitionMode mode, std::uint64_t seed,
                                              double alpha) {
  data.validate();
  if (k < 1) throw std::invalid_argument("partition: k must be >= 1");
  if (k > data.size()) throw std::invalid_argument("partition: k exceeds dataset size");

  std::vector<std::vector<std::size_t>> assignment(k);
  Rng rng = derive_stream(seed, "partition");

  if (mode == PartitionMode::iid) {
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    // near-equal contiguous slices of the shuffled order
    const std::size_t base = data.size() / k;
    const std::size_t extra = data.size() % k;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t take = base + (c < extra ? 1 : 0);
      for (std::size_t i = 0; i < take; ++i) assignment[c].push_back(order[pos++]);
    }
  } else {
    if (!(alpha > 0.0)) throw std::invalid_argument("partition: alpha must be > 0");
    // per-class Dirichlet over clients
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.class_count));
    for (std::size_t i = 0; i < data.size(); ++i) {
      by_class[static_cast<std::size_t>(data.examples[i].label)].push_back(i);
    }
    for (auto& cls : by_class) {
      if (cls.empty()) continue;
      rng.shuffle(cls);
      std::vector<double> props = rng.dirichlet_symmetric(alpha, k);
      // convert proportions to counts summing to cls.size()
      std::vector<std::size_t> counts(k, 0);
      std::size_t assigned = 0;
      for (std::size_t c = 0; c < k; ++c) {
        counts[c] = static_cast<std::size_t>(std::floor(props[c] * static_cast<double>(cls.size())));
        assigned += counts[c];
      }
      // distribute the remainder to the largest fractional parts
      std::vector<std::pair<double, std::size_t>> frac(k);
      for (std::size_t c = 0; c < k; ++c) {
        frac[c] = {props[c] * static_cast<double>(cls.size()) - std::floor(props[c] * static_cast<double>(cls.size())), c};
      }
      std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      for (std::size_t r = 0; assigned < cls.size(); ++r, ++assigned) counts[frac[r % k].second]++;
      std::size_t pos = 0;
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < counts[c]; ++i) assignment[c].push_back(cls[pos++]);
      }
    }
    // repair empty clients: steal one example from the currently largest
    for (std::size_t c = 0; c < k; ++c) {
      if (!assignment[c].empty()) continue;
      auto largest = std::max_element(assignment.begin(), assignment.end(),
                                      [](const auto& a, const auto& b) { return a.size() < b.size(); });
      if (largest->size() <= 1) throw std::runtime_error("partition: cannot make all clients non-empty");
      assignment[c].push_back(largest->back());
      largest->pop_back();
    }
  }

  std::vector<LabeledDataset> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    out[c].class_count = data.class_count;
    std::sort(assignment[c].begin(), assignment[c].end());
    out[c].examples.reserve(assignment[c].size());
    for (std::size_t i : assignment[c]) out[c].examples.push_back(data.examples[i]);
  }
  return out;
}

LabeledDataset make_gaussian_mixture(int class_count, std::size_t feature_dim,
                                     std::size_t example_count, double separation,
                                     double sigma, std::uint64_t seed) {
  if (class_count < 2) throw std::invalid_argument("gaussian mixture: need >= 2 classes");
  if (example_count == 0) throw std::invalid_argument("gaussian mixture: empty");
  Rng rng = derive_stream(seed, "synth");

  // unit-norm mean direction per class, scaled to +-separation/2
  std::vector<std::vector<double>> means(static_cast<std::size_t>(class_count));
  if (class_count == 2) {
    // symmetric pair +-mu keeps the two-class task balanced
    std::vector<double> mu(feature_dim);
    double norm = 0.0;
    for (auto& m : mu) {
      m = rng.normal();
      norm += m * m;
    }
    norm = std::sqrt(norm);
    for (auto& m : mu) m *= separation / 2.0 / norm;
    means[1] = mu;
    means[0] = mu;
    for (auto& m : means[0]) m = -m;
  } else {
    for (auto& mean : means) {
      mean.resize(feature_dim);
      double norm = 0.0;
      for (auto& m : mean) {
        m = rng.normal();
        norm += m * m;
      }
      norm = std::sqrt(norm);
      for (auto& m : mean) m *= separation / 2.0 / norm;
    }
  }

  LabeledDataset data;
  data.class_count = class_count;
  data.examples.reserve(example_count);
  for (std::size_t i = 0; i < example_count; ++i) {
    Example ex;
    ex.label = static_cast<int>(rng.below(static_cast<std::uint64_t>(class_count)));
    ex.features.resize(feature_dim);
    const auto& mean = means[static_cast<std::size_t>(ex.label)];
    for (std::size_t d = 0; d < feature_dim; ++d) {
      ex.features[d] = mean[d] + sigma * rng.normal();
    }
    data.examples.push_back(std::move(ex));
  }
  return data;
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_csv: missing header row");

  LabeledDataset data;
  std::size_t expected_cols = 0;
  {
    std::size_t cols = 1;
    for (char c : line) {
      if (c == ',') ++cols;
    }
    expected_cols = cols;
  }
  if (expected_cols < 2) throw std::runtime_error("load_csv: need at least one feature column and a label column");

  int max_label = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Example ex;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != expected_cols) {
      throw std::runtime_error("load_csv: row " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size()) + " columns, expected " +
                               std::to_string(expected_cols));
    }
    ex.features.reserve(cells.size() - 1);
    try {
      for (std::size_t i = 0; i + 1 < cells.size(); ++i) ex.features.push_back(std::stod(cells[i]));
      std::size_t idx = 0;
      const int label = std::stoi(cells.back(), &idx);
      if (idx != cells.back().size() || label < 0) throw std::invalid_argument("label");
      ex.label = label;
    } catch (const std::exception&) {
      throw std::runtime_error("load_csv: malformed value at row " + std::to_string(line_no));
    }
    max_label = std::max(max_label, ex.label);
    data.examples.push_back(std::move(ex));
  }
  data.class_count = max_label + 1;
  data.validate();
  return data;
}

void save_csv(const LabeledDataset& data, const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path.string());
  out.precision(17);
  const std::size_t dim = data.feature_dim();
  for (std::size_t d = 0; d < dim; ++d) out << "f" << d << ",";
  out << "label\n";
  for (const auto& ex : data.examples) {
    for (double f : ex.features) out << f << ",";
    out << ex.label << "\n";
  }
}

std::pair<LabeledDataset, LabeledDataset> train_test_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
  data.validate();
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_test_split: fraction must be in (0, 1)");
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = derive_stream(seed, "split");
  rng.shuffle(order);
  const std::size_t n_train = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(data.size())));
  if (n_train == 0 || n_train == data.size()) {
    throw std::invalid_argument("train_test_split: degenerate split");
  }
  LabeledDataset train, test;
  train.class_count = test.class_count = data.class_count;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (i < n_train ? train : test).examples.push_back(data.examples[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace scalesfl
