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

#include "ratecon/metrics.hpp"

#include <array>
#include <utility>

#include "ratecon/errors.hpp"

namespace ratecon {

namespace {

constexpr std::array<std::pair<MetricKind, std::string_view>, 12> kNames = {{
    {MetricKind::kCoverage, "coverage"},
    {MetricKind::kTruePositives, "true_positives"},
    {MetricKind::kTrueNegatives, "true_negatives"},
    {MetricKind::kFalsePositives, "false_positives"},
    {MetricKind::kFalseNegatives, "false_negatives"},
    {MetricKind::kErrors, "errors"},
    {MetricKind::kErrorRate, "error_rate"},
    {MetricKind::kRecall, "recall"},
    {MetricKind::kChanges, "changes"},
    {MetricKind::kChurnRate, "churn_rate"},
    {MetricKind::kWins, "wins"},
    {MetricKind::kLosses, "losses"},
}};

double size_of(const DatasetCollection& datasets, const std::string& id) {
  return datasets.contains(id) ? static_cast<double>(datasets.at(id).size())
                               : 0.0;
}

// Adds |D| * rate(D) when D exists.
void add_count(LinearRateCombination& combo,
               const DatasetCollection& datasets, const std::string& id,
               Polarity polarity) {
  const double n = size_of(datasets, id);
  if (n > 0.0) combo.add(id, polarity, n);
}

bool has_labeled_baseline_cells(const std::string& prefix,
                                const DatasetCollection& datasets) {
  for (int label : {1, -1}) {
    for (int base : {1, -1}) {
      if (datasets.contains(partition::by_label_baseline(prefix, label, base))) {
        return true;
      }
    }
  }
  return false;
}

LinearRateCombination counts(MetricKind kind, const std::string& prefix,
                             const DatasetCollection& datasets) {
  const std::string pos = partition::by_label(prefix, 1);
  const std::string neg = partition::by_label(prefix, -1);
  auto cell = [&](int label, int base) {
    return partition::by_label_baseline(prefix, label, base);
  };
  LinearRateCombination c;
  switch (kind) {
    case MetricKind::kTruePositives:
      add_count(c, datasets, pos, Polarity::kPositive);
      break;
    case MetricKind::kTrueNegatives:
      add_count(c, datasets, neg, Polarity::kNegative);
      break;
    case MetricKind::kFalsePositives:
      add_count(c, datasets, neg, Polarity::kPositive);
      break;
    case MetricKind::kFalseNegatives:
      add_count(c, datasets, pos, Polarity::kNegative);
      break;
    case MetricKind::kErrors:
      add_count(c, datasets, neg, Polarity::kPositive);
      add_count(c, datasets, pos, Polarity::kNegative);
      break;
    case MetricKind::kWins:
      add_count(c, datasets, cell(1, -1), Polarity::kPositive);
      add_count(c, datasets, cell(-1, 1), Polarity::kNegative);
      break;
    case MetricKind::kLosses:
      add_count(c, datasets, cell(1, 1), Polarity::kNegative);
      add_count(c, datasets, cell(-1, -1), Polarity::kPositive);
      break;
    case MetricKind::kChanges:
      if (has_labeled_baseline_cells(prefix, datasets)) {
        c = counts(MetricKind::kWins, prefix, datasets) +
            counts(MetricKind::kLosses, prefix, datasets);
      } else {
        add_count(c, datasets, partition::by_baseline(prefix, 1),
                  Polarity::kNegative);
        add_count(c, datasets, partition::by_baseline(prefix, -1),
                  Polarity::kPositive);
      }
      break;
    default:
      break;
  }
  return c;
}

double churn_denominator(const std::string& prefix,
                         const DatasetCollection& datasets) {
  double total = 0.0;
  if (has_labeled_baseline_cells(prefix, datasets)) {
    for (int label : {1, -1}) {
      for (int base : {1, -1}) {
        total += size_of(datasets,
                         partition::by_label_baseline(prefix, label, base));
      }
    }
  } else {
    total = size_of(datasets, partition::by_baseline(prefix, 1)) +
            size_of(datasets, partition::by_baseline(prefix, -1));
  }
  return total;
}

}  // namespace

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  for (const auto& [kind, text] : kNames) {
    if (text == name) return kind;
  }
  return std::nullopt;
}

std::string_view metric_name(MetricKind kind) {
  for (const auto& [k, text] : kNames) {
    if (k == kind) return text;
  }
  return "unknown";
}

LinearRateCombination build_metric(MetricKind kind, const std::string& prefix,
                                   const DatasetCollection& datasets) {
  LinearRateCombination out;
  switch (kind) {
    case MetricKind::kCoverage:
      if (!datasets.contains(partition::all(prefix))) {
        throw ConfigError("coverage: unknown dataset '" + prefix + "'");
      }
      out.add(partition::all(prefix), Polarity::kPositive, 1.0);
      break;
    case MetricKind::kErrorRate: {
      const double n = size_of(datasets, partition::by_label(prefix, 1)) +
                       size_of(datasets, partition::by_label(prefix, -1));
      if (n == 0.0) {
        throw ConfigError("error_rate: '" + prefix + "' has no labeled cells");
      }
      out = counts(MetricKind::kErrors, prefix, datasets).scaled(1.0 / n);
      break;
    }
    case MetricKind::kRecall: {
      const std::string pos = partition::by_label(prefix, 1);
      if (!datasets.contains(pos)) {
        throw ConfigError("recall: '" + prefix + "' has no positives");
      }
      out.add(pos, Polarity::kPositive, 1.0);
      break;
    }
    case MetricKind::kChurnRate: {
      const double n = churn_denominator(prefix, datasets);
      if (n == 0.0) {
        throw ConfigError("churn_rate: '" + prefix +
                          "' has no baseline partitions");
      }
      out = counts(MetricKind::kChanges, prefix, datasets).scaled(1.0 / n);
      break;
    }
    default:
      out = counts(kind, prefix, datasets);
      if (out.terms.empty()) {
        throw ConfigError(std::string(metric_name(kind)) + ": '" + prefix +
                          "' lacks the required partitions");
      }
      break;
  }
  return canonicalize(out, datasets);
}

RateConstraint build_ratio_constraint(const LinearRateCombination& numerator,
                                      const LinearRateCombination& denominator,
                                      double ratio, Direction direction,
                                      std::string name) {
  for (const RateTerm& t : denominator.terms) {
    if (t.coefficient < 0.0) {
      throw ConfigError("ratio denominator has a negative coefficient");
    }
  }
  const LinearRateCombination lhs =
      direction == Direction::kAtLeast
          ? denominator.scaled(ratio) - numerator
          : numerator - denominator.scaled(ratio);
  return make_constraint(lhs, 0.0, std::move(name));
}

RateConstraint build_fairness_constraint(const std::string& group_a,
                                         const std::string& group_b,
                                         double kappa, FairnessForm form,
                                         std::string name) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw ConfigError("kappa must lie in (0, 1]");
  }
  LinearRateCombination a;
  a.add(group_a, Polarity::kPositive, 1.0);
  LinearRateCombination b;
  b.add(group_b, Polarity::kPositive, 1.0);
  if (form == FairnessForm::kScaledByKappa) {
    return build_ratio_constraint(a, b, kappa, Direction::kAtLeast,
                                  std::move(name));
  }
  return make_constraint(b - a.scaled(1.0 / kappa), 0.0, std::move(name));
}

}  // namespace ratecon
