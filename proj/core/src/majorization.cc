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

#include "ratecon/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ratecon/piecewise.hpp"
#include "ratecon/rates.hpp"
#include "ratecon/subproblem.hpp"

namespace ratecon {

double ramp_objective(const ConstrainedProblem& problem,
                      const LinearClassifier& classifier) {
  double value = 0.0;
  for (const DatasetTerms& t : problem.terms()) {
    const RatePair r = ramp_rates(*t.dataset, classifier);
    value += t.alpha * r.positive + t.beta * r.negative;
  }
  return value + 0.5 * problem.lambda() * classifier.squared_norm();
}

std::vector<double> ramp_violations(const ConstrainedProblem& problem,
                                    const LinearClassifier& classifier) {
  const auto bounds = problem.bounds();
  std::vector<double> out(bounds.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = -bounds[j];
  for (const DatasetTerms& t : problem.terms()) {
    const RatePair r = ramp_rates(*t.dataset, classifier);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += t.constraint_alpha[j] * r.positive +
                t.constraint_beta[j] * r.negative;
    }
  }
  return out;
}

double max_violation(const std::vector<double>& violations) {
  double worst = 0.0;
  for (double v : violations) worst = std::max(worst, v);
  return worst;
}

namespace {

std::size_t worst_index(const std::vector<double>& violations) {
  return static_cast<std::size_t>(
      std::max_element(violations.begin(), violations.end()) -
      violations.begin());
}

void record(SolverTrace& trace, std::size_t t, const MmIterate& it,
            double lower, double upper, double eps, std::size_t m) {
  TraceRow row;
  row.level = TraceLevel::kMm;
  row.mm_iter = t;
  row.lower = lower;
  row.upper = upper;
  row.eps = eps;
  row.value = it.objective;
  row.extra = it.max_violation;
  row.constraints = m;
  trace.add(std::move(row));
}

}  // namespace

MmResult majorize_minimize(const ConstrainedProblem& problem,
                           const LinearClassifier& init,
                           const MmOptions& options) {
  if (options.iterations < 1) throw ConfigError("need at least one iteration");
  if (!(options.eps > 0.0)) throw ConfigError("eps must be positive");
  if (init.dimension() != problem.dimension()) {
    throw ConfigError("initial classifier has the wrong dimension");
  }
  const std::size_t m = problem.num_constraints();
  const std::vector<double> v0 = ramp_violations(problem, init);
  if (max_violation(v0) > options.feas_tol) {
    const std::size_t j = worst_index(v0);
    throw InfeasibleError("initial point violates constraint " +
                              std::to_string(j) + " by " +
                              format_double(v0[j]),
                          j, v0[j]);
  }

  MmResult result;
  result.classifier = init;
  result.iterates.push_back(
      {init, ramp_objective(problem, init), max_violation(v0)});
  record(result.trace, 0, result.iterates.back(), TraceRow::kUnset,
         TraceRow::kUnset, options.eps, m);

  for (std::size_t t = 1; t <= options.iterations; ++t) {
    const ConvexSubproblem sub(problem, result.classifier);
    SaddleResult saddle;
    try {
      TraceContext ctx;
      ctx.trace = &result.trace;
      ctx.mm_iter = t;
      saddle = solve_saddle(sub, options.eps, options.saddle, ctx);
    } catch (const Error& e) {
      throw MmError("subproblem " + std::to_string(t) + " failed: " + e.what(),
                    std::move(result));
    }
    MmIterate it{saddle.recovered, ramp_objective(problem, saddle.recovered),
                 max_violation(ramp_violations(problem, saddle.recovered))};
    record(result.trace, t, it, saddle.lower, saddle.upper, options.eps, m);
    for (const std::string& w : saddle.warnings) {
      result.warnings.push_back("iteration " + std::to_string(t) + ": " + w);
    }
    const double previous = result.iterates.back().objective;
    result.classifier = it.classifier;
    result.multipliers = saddle.multipliers;
    result.iterates.push_back(std::move(it));
    if (options.early_stop &&
        std::abs(previous - result.iterates.back().objective) <
            options.eps / 10.0) {
      break;
    }
  }
  return result;
}

LinearClassifier find_initial_point(const ConstrainedProblem& problem,
                                    BiasMode bias_mode, double feas_tol) {
  LinearClassifier out = LinearClassifier::zeros(problem.dimension());
  const std::size_t m = problem.num_constraints();
  if (m == 0) return out;

  if (bias_mode == BiasMode::kFree) {
    // With w = 0 every positive ramp rate equals p = ramp(-b), so each
    // constraint is affine in p on [0, 1].
    std::vector<Line> lines(m);
    const auto bounds = problem.bounds();
    for (std::size_t j = 0; j < m; ++j) {
      double slope = 0.0, at_zero = -bounds[j];
      for (const DatasetTerms& t : problem.terms()) {
        slope += t.constraint_alpha[j] - t.constraint_beta[j];
        at_zero += t.constraint_beta[j];
      }
      lines[j] = {0.0, at_zero, slope};
    }
    const Polyline h = upper_envelope(lines, 0.0, 1.0);
    const double level = std::max(h.min_value(), 0.0);
    const double tol = 1e-12 * (1.0 + std::abs(level));
    auto inside = [&](std::size_t k) { return h.y[k] <= level + tol; };
    std::size_t first = 0, last = h.x.size() - 1;
    while (!inside(first)) ++first;
    while (!inside(last)) --last;
    auto crossing = [&](std::size_t a, std::size_t b) {
      const double t = (level - h.y[a]) / (h.y[b] - h.y[a]);
      return h.x[a] + std::clamp(t, 0.0, 1.0) * (h.x[b] - h.x[a]);
    };
    const double p_lo = first == 0 ? h.x[0] : crossing(first - 1, first);
    const double p_hi =
        last + 1 == h.x.size() ? h.x.back() : crossing(last, last + 1);
    const double p = std::clamp(0.5, p_lo, p_hi);
    out.bias = 0.5 - p;
  }

  const std::vector<double> violations = ramp_violations(problem, out);
  if (max_violation(violations) > feas_tol) {
    const std::size_t j = worst_index(violations);
    throw InfeasibleError("no feasible bias at zero weights: constraint " +
                              std::to_string(j) + " violated by " +
                              format_double(violations[j]),
                          j, violations[j]);
  }
  return out;
}

}  // namespace ratecon
