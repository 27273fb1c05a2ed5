// Copyright 2026 The ratecon Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RATECON_DATASET_HPP_
#define RATECON_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ratecon {

struct Feature {
  std::uint32_t index;
  double value;

  bool operator==(const Feature&) const = default;
};

// Sorted by index, no duplicates.
using SparseVector = std::vector<Feature>;

// Sorts by index. Throws ConfigError on duplicate indices or non-finite
// values.
SparseVector make_sparse(std::vector<Feature> features);

double dot(std::span<const double> dense, std::span<const Feature> x);
double squared_norm(std::span<const Feature> x);

// dense += scale * x
void axpy(double scale, std::span<const Feature> x, std::span<double> dense);

// A bag of sparse feature vectors stored in compressed rows.
class UnlabeledDataset {
 public:
  // Throws ConfigError if empty, if an index is >= dimension or if a value
  // is not finite.
  UnlabeledDataset(std::string id, std::size_t dimension,
                   const std::vector<SparseVector>& examples);

  const std::string& id() const { return id_; }
  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t dimension() const { return dimension_; }

  std::span<const Feature> example(std::size_t i) const {
    return {features_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  // Largest Euclidean norm over the examples.
  double max_norm() const;

 private:
  std::string id_;
  std::size_t dimension_;
  std::vector<std::size_t> offsets_;
  std::vector<Feature> features_;
};

using DatasetPtr = std::shared_ptr<const UnlabeledDataset>;

// Datasets addressed by id. All members share one dimension.
class DatasetCollection {
 public:
  explicit DatasetCollection(std::size_t dimension) : dimension_(dimension) {}

  // Throws ConfigError on a duplicate id or a dimension mismatch.
  void add(DatasetPtr dataset);
  void merge(const DatasetCollection& other);

  bool contains(const std::string& id) const;
  // Throws ConfigError for unknown ids.
  const UnlabeledDataset& at(const std::string& id) const;
  DatasetPtr get(const std::string& id) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return datasets_.size(); }
  std::vector<std::string> ids() const;

 private:
  std::size_t dimension_;
  std::map<std::string, DatasetPtr> datasets_;
};

struct LabeledExample {
  SparseVector features;
  int label = 1;
  std::optional<std::string> group;
  std::optional<int> baseline;
};

// Dataset ids produced by partitioning a labeled sample called `prefix`.
namespace partition {

std::string all(const std::string& prefix);
std::string by_label(const std::string& prefix, int label);
std::string by_group(const std::string& prefix, const std::string& group);
std::string by_label_group(const std::string& prefix, int label,
                           const std::string& group);
// Label first, baseline prediction second: "++", "+-", "-+", "--".
std::string by_label_baseline(const std::string& prefix, int label,
                              int baseline);
std::string by_baseline(const std::string& prefix, int baseline);

}  // namespace partition

// Emits the full sample, D+ and D-, group and label-group intersections when
// groups are present, and the four label/baseline cells plus the two
// baseline-only cells when baseline predictions are present. Empty cells are
// omitted. Throws ConfigError on labels outside {+1,-1}.
DatasetCollection partition_labeled_data(
    const std::string& prefix, std::size_t dimension,
    std::span<const LabeledExample> examples);

// Unlabeled sample split by the deployed model's predictions only.
DatasetCollection partition_by_baseline(const std::string& prefix,
                                        std::size_t dimension,
                                        std::span<const SparseVector> features,
                                        std::span<const int> baseline);

}  // namespace ratecon

#endif  // RATECON_DATASET_HPP_
