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

#include "ratecon/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratecon/errors.hpp"

namespace ratecon {

double LinearClassifier::squared_norm() const {
  double sum = 0.0;
  for (double w : weights) sum += w * w;
  return sum;
}

bool LinearClassifier::is_finite() const {
  if (!std::isfinite(bias)) return false;
  return std::all_of(weights.begin(), weights.end(),
                     [](double w) { return std::isfinite(w); });
}

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum(0, values.size(),
                      [&](std::size_t i) { return values[i]; });
}

double ramp(double z) { return std::max(0.0, std::min(1.0, 0.5 + z)); }

double ramp_bound_positive(double z, double anchor_z) {
  return anchor_z <= 0.5 ? std::max(0.0, 0.5 + z) : 1.0;
}

double ramp_bound_negative(double z, double anchor_z) {
  return ramp_bound_positive(-z, -anchor_z);
}

namespace {

void check_dimension(const UnlabeledDataset& dataset,
                     const LinearClassifier& classifier) {
  if (dataset.dimension() != classifier.dimension()) {
    throw ConfigError("dataset '" + dataset.id() + "' has dimension " +
                      std::to_string(dataset.dimension()) +
                      " but the classifier has " +
                      std::to_string(classifier.dimension()));
  }
}

template <typename PerExample>
RatePair mean_pair(const UnlabeledDataset& dataset, const PerExample& f) {
  const double n = static_cast<double>(dataset.size());
  const double p = pairwise_sum(0, dataset.size(), [&](std::size_t i) {
    return f(i).positive;
  });
  const double q = pairwise_sum(0, dataset.size(), [&](std::size_t i) {
    return f(i).negative;
  });
  return {p / n, q / n};
}

}  // namespace

std::vector<double> scores(const UnlabeledDataset& dataset,
                           const LinearClassifier& classifier) {
  check_dimension(dataset, classifier);
  std::vector<double> out(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out[i] = classifier.score(dataset.example(i));
  }
  return out;
}

RatePair indicator_rates(const UnlabeledDataset& dataset,
                         const LinearClassifier& classifier) {
  const std::vector<double> z = scores(dataset, classifier);
  std::size_t positives = 0;
  for (double s : z) positives += s > 0.0 ? 1 : 0;
  const double p =
      static_cast<double>(positives) / static_cast<double>(z.size());
  return {p, 1.0 - p};
}

RatePair ramp_rates(const UnlabeledDataset& dataset,
                    const LinearClassifier& classifier) {
  const std::vector<double> z = scores(dataset, classifier);
  return mean_pair(dataset, [&](std::size_t i) {
    return RatePair{ramp(z[i]), ramp(-z[i])};
  });
}

RatePair bound_rates(const UnlabeledDataset& dataset,
                     const LinearClassifier& classifier,
                     const LinearClassifier& anchor) {
  const std::vector<double> z = scores(dataset, classifier);
  const std::vector<double> za = scores(dataset, anchor);
  return mean_pair(dataset, [&](std::size_t i) {
    return RatePair{ramp_bound_positive(z[i], za[i]),
                    ramp_bound_negative(z[i], za[i])};
  });
}

RatePair rates(const UnlabeledDataset& dataset,
               const LinearClassifier& classifier, const RateKind& kind) {
  if (std::holds_alternative<IndicatorRate>(kind)) {
    return indicator_rates(dataset, classifier);
  }
  if (std::holds_alternative<RampRate>(kind)) {
    return ramp_rates(dataset, classifier);
  }
  return bound_rates(dataset, classifier, std::get<HingeBoundRate>(kind).anchor);
}

double evaluate_combination(const LinearRateCombination& combo,
                            const DatasetCollection& datasets,
                            const LinearClassifier& classifier,
                            const RateKind& kind) {
  double value = combo.constant;
  for (const RateTerm& t : combo.terms) {
    const RatePair r = rates(datasets.at(t.dataset), classifier, kind);
    value += t.coefficient *
             (t.polarity == Polarity::kPositive ? r.positive : r.negative);
  }
  return value;
}

int randomized_predict(std::span<const Feature> x,
                       const LinearClassifier& classifier, double u) {
  return u < ramp(classifier.score(x)) ? 1 : -1;
}

}  // namespace ratecon
