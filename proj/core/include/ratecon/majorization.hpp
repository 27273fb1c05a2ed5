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

#ifndef RATECON_MAJORIZATION_HPP_
#define RATECON_MAJORIZATION_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "ratecon/classifier.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/rate_combination.hpp"
#include "ratecon/saddle.hpp"
#include "ratecon/svm.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

struct MmOptions {
  std::size_t iterations = 5;
  double eps = 1e-3;
  double feas_tol = 1e-6;
  // Stop once successive ramp objectives differ by less than eps / 10.
  bool early_stop = false;
  SaddleOptions saddle;
};

struct MmIterate {
  LinearClassifier classifier;
  double objective = 0.0;
  double max_violation = 0.0;
};

struct MmResult {
  LinearClassifier classifier;
  // The initial point first, then one entry per subproblem solved.
  std::vector<MmIterate> iterates;
  SolverTrace trace;
  MultiplierVector multipliers;
  std::vector<std::string> warnings;
};

class MmError : public SolverError {
 public:
  MmError(const std::string& what, MmResult partial)
      : SolverError(what), partial_(std::move(partial)) {}
  const MmResult& partial() const { return partial_; }

 private:
  MmResult partial_;
};

// Ramp rates of the objective (without its constant) plus the regularizer.
double ramp_objective(const ConstrainedProblem& problem,
                      const LinearClassifier& classifier);
// Ramp constraint left-hand sides minus bounds.
std::vector<double> ramp_violations(const ConstrainedProblem& problem,
                                    const LinearClassifier& classifier);
double max_violation(const std::vector<double>& violations);

// Repeatedly solves the convex bound anchored at the current iterate. Throws
// InfeasibleError if `init` violates a ramp constraint by more than
// feas_tol and MmError (with the iterates so far) if a subproblem fails.
MmResult majorize_minimize(const ConstrainedProblem& problem,
                           const LinearClassifier& init,
                           const MmOptions& options);

// Zero weights and the bias minimizing the largest ramp violation (b = 0
// when the bias is disabled). Throws InfeasibleError naming the worst
// constraint when that violation exceeds feas_tol.
LinearClassifier find_initial_point(const ConstrainedProblem& problem,
                                    BiasMode bias_mode,
                                    double feas_tol = 1e-6);

}  // namespace ratecon

#endif  // RATECON_MAJORIZATION_HPP_
