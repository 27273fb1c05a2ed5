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

#ifndef RATECON_SDCA_HPP_
#define RATECON_SDCA_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ratecon/dataset.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/subproblem.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

// min_w (1/n) sum_i l_i(<w, x_i> - b) + lambda/2 |w|^2 + constant
// with the two-hinge losses of per_example_loss.
class WeightedSvm {
 public:
  WeightedSvm(const ConvexSubproblem& sub, const ExampleCoefficients& coeffs);
  WeightedSvm(std::vector<std::span<const Feature>> examples,
              std::size_t dimension, std::vector<double> a_plus,
              std::vector<double> a_minus, double lambda, double constant);

  std::size_t size() const { return examples_.size(); }
  std::size_t dimension() const { return dimension_; }
  double lambda() const { return lambda_; }
  double constant() const { return constant_; }
  std::span<const Feature> example(std::size_t i) const { return examples_[i]; }
  double a_plus(std::size_t i) const { return a_plus_[i]; }
  double a_minus(std::size_t i) const { return a_minus_[i]; }
  double squared_norm(std::size_t i) const { return squared_norms_[i]; }
  double max_norm() const;
  double max_coefficient() const;

  double primal(std::span<const double> weights, double bias) const;
  // Dual value at xi; w must be the mirror of xi.
  double dual(std::span<const double> xi, std::span<const double> weights,
              double bias) const;
  // w = -(1 / (lambda n)) sum_i xi_i x_i
  std::vector<double> weights_from_dual(std::span<const double> xi) const;
  // d(dual)/db = -(1/n) sum_i xi_i
  double bias_slope(std::span<const double> xi) const;

 private:
  void validate();

  std::vector<std::span<const Feature>> examples_;
  std::size_t dimension_;
  std::vector<double> a_plus_;
  std::vector<double> a_minus_;
  std::vector<double> squared_norms_;
  double lambda_;
  double constant_;
};

struct DualState {
  std::vector<double> xi;
  std::vector<double> weights;
  double primal = 0.0;
  double dual = 0.0;
  std::size_t epochs = 0;

  double gap() const { return primal - dual; }
};

// xi = 0, w = 0.
DualState zero_state(const WeightedSvm& svm);

// Clamps xi into the boxes of `svm` and rebuilds w from scratch.
DualState clamp_state(const WeightedSvm& svm, DualState state);

// Closed-form maximizer over one coordinate of the dual, given the current
// margin z = <w, x> - b (computed with xi included) and q = |x|^2 / (lambda n).
double sdca_coordinate_step(double xi, double z, double q, double a_plus,
                            double a_minus);

struct SdcaOptions {
  double gap = 1e-6;
  std::uint64_t seed = 0;
  std::size_t max_epochs = 100000;
};

class SdcaError : public SolverError {
 public:
  SdcaError(const std::string& what, DualState best)
      : SolverError(what), best_(std::move(best)) {}
  const DualState& best() const { return best_; }

 private:
  DualState best_;
};

// Stochastic dual coordinate ascent from `state` with uniform sampling
// (with replacement) from a seeded generator, checking the gap after every
// epoch of n updates. Returns once primal - dual <= options.gap. Throws
// SdcaError carrying the final state when the epoch cap is hit, SolverError
// if weak duality fails.
DualState sdca_optimize(const WeightedSvm& svm, double bias,
                        const SdcaOptions& options, DualState state,
                        const TraceContext& trace = {});

}  // namespace ratecon

#endif  // RATECON_SDCA_HPP_
