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

#include "ratecon/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ratecon/errors.hpp"

namespace ratecon {

SparseVector make_sparse(std::vector<Feature> features) {
  std::sort(features.begin(), features.end(),
            [](const Feature& a, const Feature& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!std::isfinite(features[i].value)) {
      throw ConfigError("non-finite feature value at index " +
                        std::to_string(features[i].index));
    }
    if (i > 0 && features[i].index == features[i - 1].index) {
      throw ConfigError("duplicate feature index " +
                        std::to_string(features[i].index));
    }
  }
  return features;
}

double dot(std::span<const double> dense, std::span<const Feature> x) {
  double sum = 0.0;
  for (const Feature& f : x) sum += dense[f.index] * f.value;
  return sum;
}

double squared_norm(std::span<const Feature> x) {
  double sum = 0.0;
  for (const Feature& f : x) sum += f.value * f.value;
  return sum;
}

void axpy(double scale, std::span<const Feature> x, std::span<double> dense) {
  for (const Feature& f : x) dense[f.index] += scale * f.value;
}

UnlabeledDataset::UnlabeledDataset(std::string id, std::size_t dimension,
                                   const std::vector<SparseVector>& examples)
    : id_(std::move(id)), dimension_(dimension) {
  if (examples.empty()) throw ConfigError("dataset '" + id_ + "' is empty");
  offsets_.reserve(examples.size() + 1);
  offsets_.push_back(0);
  for (const SparseVector& x : examples) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].index >= dimension_) {
        throw ConfigError("dataset '" + id_ + "': feature index " +
                          std::to_string(x[k].index) + " >= dimension " +
                          std::to_string(dimension_));
      }
      if (!std::isfinite(x[k].value)) {
        throw ConfigError("dataset '" + id_ + "': non-finite feature value");
      }
      if (k > 0 && x[k].index <= x[k - 1].index) {
        throw ConfigError("dataset '" + id_ +
                          "': feature indices not strictly increasing");
      }
      features_.push_back(x[k]);
    }
    offsets_.push_back(features_.size());
  }
}

double UnlabeledDataset::max_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    best = std::max(best, squared_norm(example(i)));
  }
  return std::sqrt(best);
}

void DatasetCollection::add(DatasetPtr dataset) {
  if (!dataset) throw ConfigError("null dataset");
  if (dataset->dimension() != dimension_) {
    throw ConfigError("dataset '" + dataset->id() + "' has dimension " +
                      std::to_string(dataset->dimension()) + ", expected " +
                      std::to_string(dimension_));
  }
  const std::string id = dataset->id();
  if (!datasets_.emplace(id, std::move(dataset)).second) {
    throw ConfigError("duplicate dataset id '" + id + "'");
  }
}

void DatasetCollection::merge(const DatasetCollection& other) {
  for (const auto& [id, ptr] : other.datasets_) add(ptr);
}

bool DatasetCollection::contains(const std::string& id) const {
  return datasets_.count(id) > 0;
}

const UnlabeledDataset& DatasetCollection::at(const std::string& id) const {
  return *get(id);
}

DatasetPtr DatasetCollection::get(const std::string& id) const {
  auto it = datasets_.find(id);
  if (it == datasets_.end()) throw ConfigError("unknown dataset '" + id + "'");
  return it->second;
}

std::vector<std::string> DatasetCollection::ids() const {
  std::vector<std::string> out;
  out.reserve(datasets_.size());
  for (const auto& entry : datasets_) out.push_back(entry.first);
  return out;
}

namespace partition {

namespace {
const char* sign(int v) { return v > 0 ? "+" : "-"; }
}  // namespace

std::string all(const std::string& prefix) { return prefix; }

std::string by_label(const std::string& prefix, int label) {
  return prefix + "/" + sign(label);
}

std::string by_group(const std::string& prefix, const std::string& group) {
  return prefix + "/@" + group;
}

std::string by_label_group(const std::string& prefix, int label,
                           const std::string& group) {
  return prefix + "/" + sign(label) + "@" + group;
}

std::string by_label_baseline(const std::string& prefix, int label,
                              int baseline) {
  return prefix + "/" + sign(label) + sign(baseline);
}

std::string by_baseline(const std::string& prefix, int baseline) {
  return prefix + "/b" + sign(baseline);
}

}  // namespace partition

namespace {

void check_sign(int v, const char* what) {
  if (v != 1 && v != -1) {
    throw ConfigError(std::string(what) + " must be +1 or -1, got " +
                      std::to_string(v));
  }
}

void emit(std::map<std::string, std::vector<SparseVector>>& cells,
          DatasetCollection& out, std::size_t dimension) {
  for (auto& [id, rows] : cells) {
    if (rows.empty()) continue;
    out.add(std::make_shared<UnlabeledDataset>(id, dimension, rows));
  }
}

}  // namespace

DatasetCollection partition_labeled_data(
    const std::string& prefix, std::size_t dimension,
    std::span<const LabeledExample> examples) {
  std::map<std::string, std::vector<SparseVector>> cells;
  for (const LabeledExample& e : examples) {
    check_sign(e.label, "label");
    cells[partition::all(prefix)].push_back(e.features);
    cells[partition::by_label(prefix, e.label)].push_back(e.features);
    if (e.group) {
      cells[partition::by_group(prefix, *e.group)].push_back(e.features);
      cells[partition::by_label_group(prefix, e.label, *e.group)].push_back(
          e.features);
    }
    if (e.baseline) {
      check_sign(*e.baseline, "baseline prediction");
      cells[partition::by_label_baseline(prefix, e.label, *e.baseline)]
          .push_back(e.features);
      cells[partition::by_baseline(prefix, *e.baseline)].push_back(e.features);
    }
  }
  DatasetCollection out(dimension);
  emit(cells, out, dimension);
  return out;
}

DatasetCollection partition_by_baseline(const std::string& prefix,
                                        std::size_t dimension,
                                        std::span<const SparseVector> features,
                                        std::span<const int> baseline) {
  if (features.size() != baseline.size()) {
    throw ConfigError("feature and baseline counts differ");
  }
  std::map<std::string, std::vector<SparseVector>> cells;
  for (std::size_t i = 0; i < features.size(); ++i) {
    check_sign(baseline[i], "baseline prediction");
    cells[partition::all(prefix)].push_back(features[i]);
    cells[partition::by_baseline(prefix, baseline[i])].push_back(features[i]);
  }
  DatasetCollection out(dimension);
  emit(cells, out, dimension);
  return out;
}

}  // namespace ratecon
