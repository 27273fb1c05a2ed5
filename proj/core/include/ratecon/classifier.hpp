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

#ifndef RATECON_CLASSIFIER_HPP_
#define RATECON_CLASSIFIER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ratecon/dataset.hpp"

namespace ratecon {

// Scores x as <w, x> - b.
struct LinearClassifier {
  std::vector<double> weights;
  double bias = 0.0;

  static LinearClassifier zeros(std::size_t dimension) {
    return {std::vector<double>(dimension, 0.0), 0.0};
  }

  std::size_t dimension() const { return weights.size(); }
  double score(std::span<const Feature> x) const {
    return dot(weights, x) - bias;
  }
  double squared_norm() const;
  bool is_finite() const;

  bool operator==(const LinearClassifier&) const = default;
};

}  // namespace ratecon

#endif  // RATECON_CLASSIFIER_HPP_
