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

#ifndef RATECON_METRICS_HPP_
#define RATECON_METRICS_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "ratecon/dataset.hpp"
#include "ratecon/rate_combination.hpp"

namespace ratecon {

enum class MetricKind {
  kCoverage,
  kTruePositives,
  kTrueNegatives,
  kFalsePositives,
  kFalseNegatives,
  kErrors,
  kErrorRate,
  kRecall,
  kChanges,
  kChurnRate,
  kWins,
  kLosses,
};

std::optional<MetricKind> parse_metric_kind(std::string_view name);
std::string_view metric_name(MetricKind kind);

// Builds the linear form of a metric over the partitions of the sample
// `prefix` (see partition_labeled_data). Missing cells count as empty.
// Counts are weighted by cell sizes.
//
// Churn-style metrics use the four label/baseline cells when any exist and
// fall back to the two baseline-only cells otherwise. In the fallback,
// changes are |D b+| s_n + |D b-| s_p; wins and losses need labels.
//
// Throws ConfigError when every required cell is missing or a rate
// denominator is zero.
LinearRateCombination build_metric(MetricKind kind, const std::string& prefix,
                                   const DatasetCollection& datasets);

enum class Direction { kAtLeast, kAtMost };

// numerator >= ratio * denominator (or <=), multiplied through and
// rewritten as a canonical upper-bound constraint.
RateConstraint build_ratio_constraint(const LinearRateCombination& numerator,
                                      const LinearRateCombination& denominator,
                                      double ratio, Direction direction,
                                      std::string name = "");

enum class FairnessForm {
  // kappa * s_p(B) - s_p(A) <= 0
  kScaledByKappa,
  // s_p(B) - s_p(A) / kappa <= 0
  kScaledByInverseKappa,
};

// s_p(A) >= kappa * s_p(B). Pass intersected cells for equal opportunity.
// Throws ConfigError unless 0 < kappa <= 1.
RateConstraint build_fairness_constraint(
    const std::string& group_a, const std::string& group_b, double kappa,
    FairnessForm form = FairnessForm::kScaledByKappa, std::string name = "");

}  // namespace ratecon

#endif  // RATECON_METRICS_HPP_
