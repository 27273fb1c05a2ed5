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

#include "ratecon/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "ratecon/errors.hpp"
#include "ratecon/rates.hpp"
#include "ratecon/subproblem.hpp"

namespace ratecon {

namespace {

struct MarginItem {
  double margin;
  double weight;
};

}  // namespace

LinearClassifier train_unconstrained_svm(const DatasetCollection& datasets,
                                         const LinearRateCombination& objective,
                                         double lambda,
                                         const BaselineOptions& options) {
  const ConstrainedProblem problem(datasets, objective, {}, lambda, 1.0);
  const ConvexSubproblem sub(problem,
                             LinearClassifier::zeros(problem.dimension()));
  const double hint = sub.bound_objective(sub.anchor());
  SvmOptions svm = options.svm;
  return svm_optimize(sub, {}, hint, options.eps, svm).classifier;
}

LinearClassifier threshold_for_constraint(const LinearClassifier& classifier,
                                          const RateConstraint& constraint,
                                          const DatasetCollection& datasets) {
  const RateConstraint c =
      make_constraint(canonicalize(constraint.lhs, datasets), constraint.bound,
                      constraint.name);
  if (c.lhs.terms.empty()) {
    if (0.0 <= c.bound) return classifier;
    throw InfeasibleError("constraint " + c.name + " is constant and violated",
                          0, -c.bound);
  }
  const Polarity polarity = c.lhs.terms.front().polarity;
  for (const RateTerm& t : c.lhs.terms) {
    if (t.polarity != polarity) {
      throw ConfigError("constraint " + c.name +
                        " mixes positive and negative rates; no bias "
                        "threshold is monotone in it");
    }
  }

  std::vector<MarginItem> items;
  for (const RateTerm& t : c.lhs.terms) {
    const UnlabeledDataset& d = datasets.at(t.dataset);
    const std::vector<double> s =
        scores(d, {classifier.weights, 0.0});
    const double w = t.coefficient / static_cast<double>(d.size());
    for (double m : s) items.push_back({m, w});
  }
  std::sort(items.begin(), items.end(),
            [](const MarginItem& a, const MarginItem& b) {
              return a.margin < b.margin;
            });

  // Region r: r = 0 is b < m_(0); r > 0 is [m_(r-1), m_(r)) over distinct
  // margins, with the last region unbounded above. Positives are the items
  // with margin > b.
  std::vector<double> boundaries;
  std::vector<double> positive_mass;
  double total = 0.0;
  for (const MarginItem& it : items) total += it.weight;
  double positive = total;
  positive_mass.push_back(positive);
  for (std::size_t i = 0; i < items.size();) {
    const double m = items[i].margin;
    while (i < items.size() && items[i].margin == m) {
      positive -= items[i].weight;
      ++i;
    }
    boundaries.push_back(m);
    positive_mass.push_back(positive);
  }

  const double b0 = classifier.bias;
  const double tol = 1e-12 * (1.0 + std::abs(c.bound));
  double best_b = 0.0;
  double best_shift = std::numeric_limits<double>::infinity();
  double achievable_lo = std::numeric_limits<double>::infinity();
  double achievable_hi = -achievable_lo;
  for (std::size_t r = 0; r < positive_mass.size(); ++r) {
    const double value = polarity == Polarity::kPositive
                             ? positive_mass[r]
                             : total - positive_mass[r];
    achievable_lo = std::min(achievable_lo, value);
    achievable_hi = std::max(achievable_hi, value);
    if (value > c.bound + tol) continue;
    const double lo = r == 0 ? -std::numeric_limits<double>::infinity()
                             : boundaries[r - 1];
    const double hi = r < boundaries.size()
                          ? boundaries[r]
                          : std::numeric_limits<double>::infinity();
    double b = b0;
    if (b0 < lo) {
      b = lo;
    } else if (b0 >= hi) {
      b = std::nextafter(hi, -std::numeric_limits<double>::infinity());
    }
    const double shift = std::abs(b - b0);
    // Later regions have larger b and so smaller coverage.
    if (shift <= best_shift) {
      best_shift = shift;
      best_b = b;
    }
  }
  if (std::isinf(best_shift)) {
    throw InfeasibleError(
        "no bias satisfies constraint " + c.name + ": achievable values [" +
            format_double(achievable_lo) + ", " +
            format_double(achievable_hi) + "], bound " +
            format_double(c.bound),
        0, achievable_lo - c.bound);
  }
  return {classifier.weights, best_b};
}

SparseVector zafar_mean_difference(const UnlabeledDataset& a,
                                   const UnlabeledDataset& b) {
  if (a.dimension() != b.dimension()) {
    throw ConfigError("mean difference of datasets with different dimensions");
  }
  std::vector<double> diff(a.dimension(), 0.0);
  const auto accumulate = [&diff](const UnlabeledDataset& d, double scale) {
    std::vector<double> sum(d.dimension(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) axpy(1.0, d.example(i), sum);
    const double inv = scale / static_cast<double>(d.size());
    for (std::size_t j = 0; j < sum.size(); ++j) diff[j] += inv * sum[j];
  };
  accumulate(a, 1.0);
  accumulate(b, -1.0);
  std::vector<Feature> out;
  for (std::size_t j = 0; j < diff.size(); ++j) {
    if (diff[j] != 0.0) out.push_back({static_cast<std::uint32_t>(j), diff[j]});
  }
  return make_sparse(std::move(out));
}

ZafarResult train_zafar_baseline(const DatasetCollection& datasets,
                                 const LinearRateCombination& objective,
                                 const SparseVector& xbar, double lambda,
                                 double c, const BaselineOptions& options) {
  if (!(c >= 0.0)) throw ConfigError("covariance bound c must be >= 0");
  if (options.svm.bias_mode != BiasMode::kNone) {
    throw ConfigError("the covariance baseline needs bias mode none");
  }
  DatasetCollection all = datasets;
  all.add(std::make_shared<const UnlabeledDataset>(
      kZafarDatasetId, datasets.dimension(), std::vector<SparseVector>{xbar}));

  // Anchored at zero: s_p = max{0, 1/2 + <w, xbar>}, s_n = max{0, 1/2 - ...}.
  std::vector<RateConstraint> constraints;
  constraints.push_back(make_constraint(
      LinearRateCombination().add(kZafarDatasetId, Polarity::kPositive, 1.0),
      0.5 + c, "covariance_upper"));
  constraints.push_back(make_constraint(
      LinearRateCombination().add(kZafarDatasetId, Polarity::kNegative, 1.0),
      0.5 + c, "covariance_lower"));
  const ConstrainedProblem problem(std::move(all), objective,
                                   std::move(constraints), lambda,
                                   ConstrainedProblem::kDefaultMultiplierCap);
  const ConvexSubproblem sub(problem,
                             LinearClassifier::zeros(problem.dimension()));
  SaddleOptions saddle;
  saddle.svm = options.svm;
  saddle.max_iterations = options.max_iterations;

  ZafarResult result;
  result.saddle = solve_saddle(sub, options.eps, saddle);
  result.classifier = result.saddle.recovered;
  result.covariance = dot(result.classifier.weights, xbar);
  return result;
}

}  // namespace ratecon
