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

#ifndef RATECON_ANALYSIS_HPP_
#define RATECON_ANALYSIS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "ratecon/rate_combination.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

// sum_i (alpha_i + beta_i + V sum_j (alpha_ij + beta_ij))
double coefficient_sum_B(const ConstrainedProblem& problem);

// 1/(2 sqrt n) + 2 X^2 B / (lambda sqrt n)
double rademacher_bound(double x_norm, double coefficient_sum, double lambda,
                        std::size_t n);
double rademacher_bound(const ConstrainedProblem& problem, double x_norm,
                        std::size_t n);

// 1 + 4 X^2 B / lambda + sqrt(8 ln(4 k / delta))
double generalization_E(double x_norm, double coefficient_sum, double lambda,
                        double delta, std::size_t k);
double generalization_E(const ConstrainedProblem& problem, double x_norm,
                        double delta, std::size_t k);

struct DatasetSlack {
  std::string dataset;
  std::size_t size = 0;
  double slack = 0.0;  // E / sqrt(n_i)
};

// Heuristic upper bounds for the trained classifier.
struct GeneralizationReport {
  double x_norm = 0.0;
  double coefficient_sum = 0.0;
  double rademacher = 0.0;
  double e_constant = 0.0;
  double delta = 0.0;
  std::vector<DatasetSlack> slacks;
  // E sum_i (alpha_ij + beta_ij) / sqrt(n_i), per constraint.
  std::vector<double> constraint_slacks;

  std::string to_string() const;
};

// X from the data, k = number of referenced datasets, n = their total size.
GeneralizationReport generalization_report(const ConstrainedProblem& problem,
                                           double delta = 0.05);

struct AuditReport {
  bool passed = true;
  std::vector<std::string> failures;
  std::size_t mm_rows = 0;
  std::size_t saddle_rows = 0;
  std::size_t bias_rows = 0;
  std::size_t sdca_rows = 0;
  std::size_t svm_calls = 0;
  std::size_t sdca_calls = 0;

  std::string to_string() const;
};

// Checks, per loop: lower bounds nondecreasing, upper bounds nonincreasing,
// lower <= upper; centroid eps floors eps >= (U - L) / (2e(m + 1)) at the
// multiplier level and eps' >= (U' - L') / 2e at the bias level; hypograph
// area shrink by (1 - 1/2e) per multiplier iteration when m = 1; weak
// duality on every gap check.
AuditReport audit_trace(const SolverTrace& trace);

}  // namespace ratecon

#endif  // RATECON_ANALYSIS_HPP_
