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

#ifndef RATECON_RATES_HPP_
#define RATECON_RATES_HPP_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ratecon/classifier.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/rate_combination.hpp"

namespace ratecon {

// Pairwise (cascade) summation of term(0) + ... + term(n-1).
template <typename Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kLeaf = 32;
  if (end - begin <= kLeaf) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += term(i);
    return sum;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

double pairwise_sum(std::span<const double> values);

// max{0, min{1, 1/2 + z}}
double ramp(double z);

// 1 iff z > 0.
inline double indicator(double z) { return z > 0.0 ? 1.0 : 0.0; }

// Upper bounds on ramp(z) and ramp(-z) that are tight at z = anchor_z.
double ramp_bound_positive(double z, double anchor_z);
double ramp_bound_negative(double z, double anchor_z);

struct RatePair {
  double positive = 0.0;
  double negative = 0.0;
};

std::vector<double> scores(const UnlabeledDataset& dataset,
                           const LinearClassifier& classifier);

// All three throw ConfigError on a dimension mismatch.
RatePair indicator_rates(const UnlabeledDataset& dataset,
                         const LinearClassifier& classifier);
RatePair ramp_rates(const UnlabeledDataset& dataset,
                    const LinearClassifier& classifier);
RatePair bound_rates(const UnlabeledDataset& dataset,
                     const LinearClassifier& classifier,
                     const LinearClassifier& anchor);

struct IndicatorRate {};
struct RampRate {};
struct HingeBoundRate {
  LinearClassifier anchor;
};
using RateKind = std::variant<IndicatorRate, RampRate, HingeBoundRate>;

RatePair rates(const UnlabeledDataset& dataset,
               const LinearClassifier& classifier, const RateKind& kind);

double evaluate_combination(const LinearRateCombination& combo,
                            const DatasetCollection& datasets,
                            const LinearClassifier& classifier,
                            const RateKind& kind);

// +1 iff u < ramp(score). u must lie in [0, 1).
int randomized_predict(std::span<const Feature> x,
                       const LinearClassifier& classifier, double u);

}  // namespace ratecon

#endif  // RATECON_RATES_HPP_
