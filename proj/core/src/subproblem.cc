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

#include "ratecon/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratecon/errors.hpp"
#include "ratecon/rates.hpp"

namespace ratecon {

ConvexSubproblem::ConvexSubproblem(const ConstrainedProblem& problem,
                                   LinearClassifier anchor)
    : problem_(&problem), anchor_(std::move(anchor)) {
  if (anchor_.dimension() != problem.dimension()) {
    throw ConfigError("anchor dimension " +
                      std::to_string(anchor_.dimension()) +
                      " does not match problem dimension " +
                      std::to_string(problem.dimension()));
  }
  const std::size_t m = problem.num_constraints();
  constraint_saturation_.assign(m, 0.0);
  examples_.reserve(problem.total_examples());
  const auto& terms = problem.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const UnlabeledDataset& d = *terms[k].dataset;
    std::size_t high = 0, low = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double z = anchor_.score(d.example(i));
      examples_.push_back(d.example(i));
      dataset_of_.push_back(k);
      positive_active_.push_back(z <= 0.5);
      negative_active_.push_back(z >= -0.5);
      high += z > 0.5 ? 1 : 0;
      low += z < -0.5 ? 1 : 0;
    }
    const double n = static_cast<double>(d.size());
    const double hi = static_cast<double>(high) / n;
    const double lo = static_cast<double>(low) / n;
    objective_saturation_ += terms[k].alpha * hi + terms[k].beta * lo;
    for (std::size_t j = 0; j < m; ++j) {
      constraint_saturation_[j] +=
          terms[k].constraint_alpha[j] * hi + terms[k].constraint_beta[j] * lo;
    }
  }
}

std::vector<std::pair<double, double>> ConvexSubproblem::bound_rate_table(
    const LinearClassifier& classifier) const {
  if (classifier.dimension() != problem_->dimension()) {
    throw ConfigError("classifier dimension mismatch");
  }
  const auto& terms = problem_->terms();
  std::vector<std::pair<double, double>> table;
  table.reserve(terms.size());
  std::size_t begin = 0;
  for (const DatasetTerms& t : terms) {
    const std::size_t size = t.dataset->size();
    std::vector<double> z(size);
    for (std::size_t i = 0; i < size; ++i) {
      z[i] = classifier.score(examples_[begin + i]);
    }
    const double p = pairwise_sum(0, size, [&](std::size_t i) {
      return positive_active_[begin + i] ? std::max(0.0, 0.5 + z[i]) : 1.0;
    });
    const double q = pairwise_sum(0, size, [&](std::size_t i) {
      return negative_active_[begin + i] ? std::max(0.0, 0.5 - z[i]) : 1.0;
    });
    const double n = static_cast<double>(size);
    table.emplace_back(p / n, q / n);
    begin += size;
  }
  return table;
}

double ConvexSubproblem::bound_objective(
    const LinearClassifier& classifier) const {
  const auto table = bound_rate_table(classifier);
  const auto& terms = problem_->terms();
  double value = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    value += terms[k].alpha * table[k].first + terms[k].beta * table[k].second;
  }
  return value + 0.5 * problem_->lambda() * classifier.squared_norm();
}

std::vector<double> ConvexSubproblem::bound_constraint_values(
    const LinearClassifier& classifier) const {
  const auto table = bound_rate_table(classifier);
  const auto& terms = problem_->terms();
  const auto bounds = problem_->bounds();
  std::vector<double> out(bounds.begin(), bounds.end());
  for (double& g : out) g = -g;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += terms[k].constraint_alpha[j] * table[k].first +
                terms[k].constraint_beta[j] * table[k].second;
    }
  }
  return out;
}

double ConvexSubproblem::ramp_objective(
    const LinearClassifier& classifier) const {
  double value = 0.0;
  for (const DatasetTerms& t : problem_->terms()) {
    const RatePair r = ramp_rates(*t.dataset, classifier);
    value += t.alpha * r.positive + t.beta * r.negative;
  }
  return value + 0.5 * problem_->lambda() * classifier.squared_norm();
}

ExampleCoefficients build_example_coefficients(const ConvexSubproblem& sub,
                                               std::span<const double> v) {
  const ConstrainedProblem& problem = sub.problem();
  const std::size_t m = problem.num_constraints();
  if (v.size() != m) throw ConfigError("multiplier count mismatch");
  const auto& terms = problem.terms();
  const double n = static_cast<double>(sub.size());

  std::vector<double> combined_alpha(terms.size()), combined_beta(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double a = terms[k].alpha, b = terms[k].beta;
    for (std::size_t j = 0; j < m; ++j) {
      a += v[j] * terms[k].constraint_alpha[j];
      b += v[j] * terms[k].constraint_beta[j];
    }
    const double scale = n / static_cast<double>(terms[k].dataset->size());
    combined_alpha[k] = scale * a;
    combined_beta[k] = scale * b;
  }

  ExampleCoefficients out;
  out.a_plus.resize(sub.size());
  out.a_minus.resize(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const std::size_t k = sub.dataset_of(i);
    out.a_plus[i] = sub.positive_active(i) ? combined_alpha[k] : 0.0;
    out.a_minus[i] = sub.negative_active(i) ? combined_beta[k] : 0.0;
  }
  const auto bounds = problem.bounds();
  const auto saturation = sub.constraint_saturation();
  out.shifted_bounds.resize(m);
  out.offset = sub.objective_saturation();
  out.constant = out.offset;
  for (std::size_t j = 0; j < m; ++j) {
    out.shifted_bounds[j] = bounds[j] - saturation[j];
    out.constant -= v[j] * out.shifted_bounds[j];
  }
  return out;
}

double per_example_loss(double z, double a_plus, double a_minus) {
  return a_plus * std::max(0.0, 0.5 + z) + a_minus * std::max(0.0, 0.5 - z);
}

double per_example_conjugate(double xi, double a_plus, double a_minus) {
  const double slack = 1e-12 * (1.0 + a_plus + a_minus);
  if (xi > a_plus + slack || xi < -a_minus - slack) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * std::abs(xi - a_plus + a_minus) - 0.5 * (a_plus + a_minus);
}

double lipschitz_constant(const ConvexSubproblem& sub,
                          std::span<const double> v) {
  const ConstrainedProblem& problem = sub.problem();
  const double n = static_cast<double>(sub.size());
  double best = 0.0;
  for (const DatasetTerms& t : problem.terms()) {
    double mass = t.alpha + t.beta;
    for (std::size_t j = 0; j < v.size(); ++j) {
      mass += v[j] * (t.constraint_alpha[j] + t.constraint_beta[j]);
    }
    best = std::max(best, n / static_cast<double>(t.dataset->size()) * mass);
  }
  return best;
}

}  // namespace ratecon
