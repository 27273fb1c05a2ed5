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

#include "ratecon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "ratecon/errors.hpp"

namespace ratecon {

namespace {

constexpr double kE = std::numbers::e;

double tolerance(double a, double b) {
  return 1e-9 * (1.0 + std::abs(a) + std::abs(b));
}

std::string where(const TraceRow& r) {
  std::ostringstream out;
  out << level_name(r.level) << " mm=" << r.mm_iter << " saddle="
      << r.saddle_iter << " bias=" << r.bias_iter;
  if (r.level == TraceLevel::kSdca) out << " epoch=" << r.epoch;
  return out.str();
}

class Auditor {
 public:
  explicit Auditor(AuditReport& report) : report_(report) {}

  void fail(const TraceRow& r, const std::string& what, double lhs,
            double rhs) {
    report_.passed = false;
    report_.failures.push_back(where(r) + ": " + what + " (" +
                               format_double(lhs) + " vs " +
                               format_double(rhs) + ")");
  }

  // Rows of one cutting-plane loop, in order.
  void check_loop(const std::vector<const TraceRow*>& loop, bool saddle) {
    const TraceRow* prev = nullptr;
    const TraceRow* prev_centroid = nullptr;
    for (const TraceRow* r : loop) {
      if (r->lower > r->upper + tolerance(r->lower, r->upper)) {
        fail(*r, "lower bound above upper bound", r->lower, r->upper);
      }
      if (prev != nullptr) {
        if (r->lower < prev->lower - tolerance(r->lower, prev->lower)) {
          fail(*r, "lower bound decreased", r->lower, prev->lower);
        }
        if (r->upper > prev->upper + tolerance(r->upper, prev->upper)) {
          fail(*r, "upper bound increased", r->upper, prev->upper);
        }
      }
      if (r->chooser != "stop" && !std::isnan(r->eps)) {
        const double gap = r->upper - r->lower;
        const double floor =
            saddle ? gap / (2.0 * kE * static_cast<double>(r->constraints + 1))
                   : gap / (2.0 * kE);
        if (r->eps < floor - tolerance(r->eps, floor)) {
          fail(*r, saddle ? "multiplier eps below floor" : "bias eps below floor",
               r->eps, floor);
        }
        if (!std::isnan(r->value) && !std::isnan(r->extra) &&
            r->extra > r->value + tolerance(r->extra, r->value)) {
          fail(*r, "cut lower above cut upper", r->extra, r->value);
        }
      }
      if (saddle && r->constraints == 1 && r->chooser == "centroid" &&
          !std::isnan(r->area)) {
        if (prev_centroid != nullptr) {
          const double bound = (1.0 - 1.0 / (2.0 * kE)) * prev_centroid->area;
          if (r->area > bound + tolerance(r->area, bound)) {
            fail(*r, "hypograph area did not shrink", r->area, bound);
          }
        }
        prev_centroid = r;
      }
      prev = r;
    }
  }

 private:
  AuditReport& report_;
};

}  // namespace

double coefficient_sum_B(const ConstrainedProblem& problem) {
  const double cap = problem.multiplier_cap();
  double sum = 0.0;
  for (const DatasetTerms& t : problem.terms()) {
    double constraint = 0.0;
    for (std::size_t j = 0; j < t.constraint_alpha.size(); ++j) {
      constraint += t.constraint_alpha[j] + t.constraint_beta[j];
    }
    sum += t.alpha + t.beta + cap * constraint;
  }
  return sum;
}

double rademacher_bound(double x_norm, double coefficient_sum, double lambda,
                        std::size_t n) {
  if (!(x_norm > 0.0) || n == 0) {
    throw ConfigError("rademacher_bound needs X > 0 and n > 0");
  }
  const double root = std::sqrt(static_cast<double>(n));
  return 1.0 / (2.0 * root) +
         2.0 * x_norm * x_norm * coefficient_sum / (lambda * root);
}

double rademacher_bound(const ConstrainedProblem& problem, double x_norm,
                        std::size_t n) {
  return rademacher_bound(x_norm, coefficient_sum_B(problem), problem.lambda(),
                          n);
}

double generalization_E(double x_norm, double coefficient_sum, double lambda,
                        double delta, std::size_t k) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  return 1.0 + 4.0 * x_norm * x_norm * coefficient_sum / lambda +
         std::sqrt(8.0 * std::log(4.0 * static_cast<double>(k) / delta));
}

double generalization_E(const ConstrainedProblem& problem, double x_norm,
                        double delta, std::size_t k) {
  return generalization_E(x_norm, coefficient_sum_B(problem), problem.lambda(),
                          delta, k);
}

GeneralizationReport generalization_report(const ConstrainedProblem& problem,
                                           double delta) {
  GeneralizationReport report;
  report.x_norm = problem.max_norm();
  report.coefficient_sum = coefficient_sum_B(problem);
  report.delta = delta;
  const std::size_t k = problem.terms().size();
  const std::size_t n = problem.total_examples();
  if (k == 0 || n == 0) throw ConfigError("problem references no data");
  const double x = std::max(report.x_norm, 1e-300);
  report.rademacher = rademacher_bound(x, report.coefficient_sum,
                                       problem.lambda(), n);
  report.e_constant = generalization_E(report.x_norm, report.coefficient_sum,
                                       problem.lambda(), delta, k);
  report.constraint_slacks.assign(problem.num_constraints(), 0.0);
  for (const DatasetTerms& t : problem.terms()) {
    const std::size_t size = t.dataset->size();
    const double root = std::sqrt(static_cast<double>(size));
    report.slacks.push_back(
        {t.dataset->id(), size, report.e_constant / root});
    for (std::size_t j = 0; j < problem.num_constraints(); ++j) {
      report.constraint_slacks[j] += report.e_constant *
                                     (t.constraint_alpha[j] +
                                      t.constraint_beta[j]) /
                                     root;
    }
  }
  return report;
}

std::string GeneralizationReport::to_string() const {
  std::ostringstream out;
  out << "generalization:\n"
      << "  X = " << format_double(x_norm) << "\n"
      << "  B = " << format_double(coefficient_sum) << "\n"
      << "  rademacher = " << format_double(rademacher) << "\n"
      << "  E = " << format_double(e_constant) << "\n"
      << "  delta = " << format_double(delta) << "\n";
  for (const DatasetSlack& s : slacks) {
    out << "  slack[" << s.dataset << "] n=" << s.size << " "
        << format_double(s.slack) << "\n";
  }
  for (std::size_t j = 0; j < constraint_slacks.size(); ++j) {
    out << "  constraint_slack[" << j << "] "
        << format_double(constraint_slacks[j]) << "\n";
  }
  return out.str();
}

AuditReport audit_trace(const SolverTrace& trace) {
  AuditReport report;
  Auditor auditor(report);

  std::vector<std::vector<const TraceRow*>> saddle_loops;
  std::vector<std::vector<const TraceRow*>> bias_loops;
  using BiasKey = std::tuple<std::size_t, std::size_t>;
  std::map<std::size_t, std::size_t> open_saddle;
  std::map<BiasKey, std::size_t> open_bias;

  for (const TraceRow& r : trace.rows()) {
    switch (r.level) {
      case TraceLevel::kMm:
        ++report.mm_rows;
        if (!std::isnan(r.lower) && !std::isnan(r.upper) &&
            r.lower > r.upper + tolerance(r.lower, r.upper)) {
          auditor.fail(r, "subproblem lower bound above upper bound", r.lower,
                       r.upper);
        }
        break;
      case TraceLevel::kSaddle: {
        ++report.saddle_rows;
        auto it = open_saddle.find(r.mm_iter);
        if (r.saddle_iter == 1 || it == open_saddle.end()) {
          saddle_loops.emplace_back();
          it = open_saddle.insert_or_assign(r.mm_iter, saddle_loops.size() - 1)
                   .first;
        }
        saddle_loops[it->second].push_back(&r);
        break;
      }
      case TraceLevel::kBias: {
        ++report.bias_rows;
        const BiasKey key{r.mm_iter, r.saddle_iter};
        auto it = open_bias.find(key);
        if (r.bias_iter == 1 || it == open_bias.end()) {
          bias_loops.emplace_back();
          ++report.svm_calls;
          it = open_bias.insert_or_assign(key, bias_loops.size() - 1).first;
        }
        bias_loops[it->second].push_back(&r);
        break;
      }
      case TraceLevel::kSdca:
        ++report.sdca_rows;
        if (!std::isnan(r.extra)) ++report.sdca_calls;
        if (r.lower > r.upper + tolerance(r.lower, r.upper)) {
          auditor.fail(r, "weak duality violated", r.lower, r.upper);
        }
        break;
    }
  }
  for (const auto& loop : saddle_loops) auditor.check_loop(loop, true);
  for (const auto& loop : bias_loops) auditor.check_loop(loop, false);
  return report;
}

std::string AuditReport::to_string() const {
  std::ostringstream out;
  out << "audit: " << (passed ? "passed" : "FAILED") << "\n"
      << "  rows: mm=" << mm_rows << " saddle=" << saddle_rows
      << " bias=" << bias_rows << " sdca=" << sdca_rows << "\n"
      << "  calls: svm(bias search)=" << svm_calls << " sdca=" << sdca_calls
      << "\n";
  for (const std::string& f : failures) out << "  failure: " << f << "\n";
  return out.str();
}

}  // namespace ratecon
