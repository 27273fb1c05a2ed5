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

#ifndef RATECON_SUBPROBLEM_HPP_
#define RATECON_SUBPROBLEM_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ratecon/classifier.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/rate_combination.hpp"

namespace ratecon {

// The convex upper bound of a problem anchored at a classifier: every ramp
// rate is replaced by its hinge or constant bound chosen by the anchor
// margin. Examples of all referenced datasets are concatenated in the order
// of ConstrainedProblem::terms().
//
// The problem must outlive this object.
class ConvexSubproblem {
 public:
  ConvexSubproblem(const ConstrainedProblem& problem, LinearClassifier anchor);

  const ConstrainedProblem& problem() const { return *problem_; }
  const LinearClassifier& anchor() const { return anchor_; }
  std::size_t num_constraints() const { return problem_->num_constraints(); }

  std::size_t size() const { return examples_.size(); }
  std::span<const Feature> example(std::size_t i) const { return examples_[i]; }
  // Index into problem().terms().
  std::size_t dataset_of(std::size_t i) const { return dataset_of_[i]; }
  // Anchor margin <= 1/2: the positive side uses the hinge.
  bool positive_active(std::size_t i) const { return positive_active_[i]; }
  // Anchor margin >= -1/2: the negative side uses the hinge.
  bool negative_active(std::size_t i) const { return negative_active_[i]; }

  // Bound-rate value of the objective (without its constant) plus the
  // regularizer.
  double bound_objective(const LinearClassifier& classifier) const;
  // Bound-rate constraint left-hand sides minus their bounds.
  std::vector<double> bound_constraint_values(
      const LinearClassifier& classifier) const;

  // Ramp counterparts, for tightness checks.
  double ramp_objective(const LinearClassifier& classifier) const;

  // sum_i c_i * #{saturated examples of D_i} / |D_i| for the objective and
  // for each constraint: the constant-branch mass absorbed into the offset
  // and into the shifted bounds.
  double objective_saturation() const { return objective_saturation_; }
  std::span<const double> constraint_saturation() const {
    return constraint_saturation_;
  }

 private:
  // Per referenced dataset bound rates at the classifier.
  std::vector<std::pair<double, double>> bound_rate_table(
      const LinearClassifier& classifier) const;

  const ConstrainedProblem* problem_;
  LinearClassifier anchor_;
  std::vector<std::span<const Feature>> examples_;
  std::vector<std::size_t> dataset_of_;
  std::vector<bool> positive_active_;
  std::vector<bool> negative_active_;
  double objective_saturation_ = 0.0;
  std::vector<double> constraint_saturation_;
};

// Per-example weights of the hinge form of the Lagrangian at multipliers v:
//
//   Psi = (1/n) sum_i l_i(<w, x_i> - b) + lambda/2 |w|^2 + constant,
//   l_i(z) = a_plus_i max{0, 1/2 + z} + a_minus_i max{0, 1/2 - z},
//   constant = offset - sum_j v_j shifted_bounds_j.
struct ExampleCoefficients {
  std::vector<double> a_plus;
  std::vector<double> a_minus;
  std::vector<double> shifted_bounds;
  double offset = 0.0;
  double constant = 0.0;
};

ExampleCoefficients build_example_coefficients(const ConvexSubproblem& sub,
                                               std::span<const double> v);

double per_example_loss(double z, double a_plus, double a_minus);

// Fenchel conjugate of per_example_loss at xi; +inf outside
// [-a_minus, a_plus].
double per_example_conjugate(double xi, double a_plus, double a_minus);

// max_i (n/|D_i|) ((alpha_i + beta_i) + sum_j v_j (alpha_ij + beta_ij))
double lipschitz_constant(const ConvexSubproblem& sub,
                          std::span<const double> v);

}  // namespace ratecon

#endif  // RATECON_SUBPROBLEM_HPP_
