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

#ifndef RATECON_RATE_COMBINATION_HPP_
#define RATECON_RATE_COMBINATION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ratecon/dataset.hpp"

namespace ratecon {

enum class Polarity { kPositive, kNegative };

inline Polarity flip(Polarity p) {
  return p == Polarity::kPositive ? Polarity::kNegative : Polarity::kPositive;
}

struct RateTerm {
  std::string dataset;
  Polarity polarity = Polarity::kPositive;
  double coefficient = 0.0;

  bool operator==(const RateTerm&) const = default;
};

// sum_k coefficient_k * rate_k + constant.
struct LinearRateCombination {
  std::vector<RateTerm> terms;
  double constant = 0.0;

  LinearRateCombination& add(std::string dataset, Polarity polarity,
                             double coefficient);
  LinearRateCombination& add_constant(double c);
  LinearRateCombination scaled(double factor) const;

  bool operator==(const LinearRateCombination&) const = default;
};

LinearRateCombination operator+(const LinearRateCombination& a,
                                const LinearRateCombination& b);
LinearRateCombination operator-(const LinearRateCombination& a,
                                const LinearRateCombination& b);

// Rewrites c * s_p with c < 0 as |c| * s_n plus c in the constant (and the
// mirror case), merges repeated (dataset, polarity) pairs, drops zero terms
// and sorts terms by (dataset, polarity).
LinearRateCombination canonicalize(const LinearRateCombination& combo);

// Same, but also checks every dataset id. Throws ConfigError.
LinearRateCombination canonicalize(const LinearRateCombination& combo,
                                   const DatasetCollection& datasets);

// lhs <= bound with lhs canonical and its constant folded into the bound.
struct RateConstraint {
  LinearRateCombination lhs;
  double bound = 0.0;
  std::string name;
};

RateConstraint make_constraint(const LinearRateCombination& lhs, double bound,
                               std::string name = "");

// Coefficients attached to one referenced dataset, in rate units.
struct DatasetTerms {
  const UnlabeledDataset* dataset = nullptr;
  double alpha = 0.0;  // objective, positive rate
  double beta = 0.0;   // objective, negative rate
  std::vector<double> constraint_alpha;
  std::vector<double> constraint_beta;
};

class ConstrainedProblem {
 public:
  static constexpr double kDefaultMultiplierCap = 1e3;

  // Canonicalizes the objective and every constraint. Throws ConfigError on
  // unknown datasets, lambda <= 0 or multiplier_cap <= 0.
  ConstrainedProblem(DatasetCollection datasets,
                     LinearRateCombination objective,
                     std::vector<RateConstraint> constraints, double lambda,
                     double multiplier_cap);

  const DatasetCollection& datasets() const { return datasets_; }
  const LinearRateCombination& objective() const { return objective_; }
  const std::vector<RateConstraint>& constraints() const {
    return constraints_;
  }
  double lambda() const { return lambda_; }
  double multiplier_cap() const { return multiplier_cap_; }
  std::size_t dimension() const { return datasets_.dimension(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  // One entry per dataset referenced by the objective or a constraint, in
  // sorted id order.
  const std::vector<DatasetTerms>& terms() const { return terms_; }
  std::span<const double> bounds() const { return bounds_; }
  // Total examples over the referenced datasets.
  std::size_t total_examples() const { return total_examples_; }
  double max_norm() const { return max_norm_; }

 private:
  DatasetCollection datasets_;
  LinearRateCombination objective_;
  std::vector<RateConstraint> constraints_;
  double lambda_;
  double multiplier_cap_;
  std::vector<DatasetTerms> terms_;
  std::vector<double> bounds_;
  std::size_t total_examples_ = 0;
  double max_norm_ = 0.0;
};

}  // namespace ratecon

#endif  // RATECON_RATE_COMBINATION_HPP_
