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

#include <gtest/gtest.h>

#include <vector>

#include "ratecon/analysis.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/majorization.hpp"
#include "ratecon/metrics.hpp"
#include "ratecon/saddle.hpp"
#include "ratecon/svm.hpp"
#include "test_util.hpp"

namespace ratecon {
namespace {

using testing::labeled;

DatasetCollection two_points() {
  return partition_labeled_data(
      "s", 1,
      std::vector<LabeledExample>{labeled({1.0}, 1), labeled({-1.0}, -1)});
}

ConstrainedProblem coverage_problem(double bound, double cap = 1e3) {
  const DatasetCollection d = two_points();
  std::vector<RateConstraint> c;
  if (bound >= 0.0) {
    c.push_back(
        make_constraint(build_metric(MetricKind::kCoverage, "s", d), bound));
  }
  return ConstrainedProblem(d, build_metric(MetricKind::kErrorRate, "s", d),
                            std::move(c), 0.1, cap);
}

TEST(DualPsiTest, ZeroMultipliersGiveObjective) {
  const ConstrainedProblem p = coverage_problem(0.3);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  const LinearClassifier c{{0.7}, -0.2};
  const std::vector<double> v = {0.0};
  EXPECT_DOUBLE_EQ(dual_psi(c, v, sub), sub.bound_objective(c));
}

TEST(DualPsiTest, AffineInMultipliers) {
  const ConstrainedProblem p = coverage_problem(0.3);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  const LinearClassifier c{{0.7}, -0.2};
  const std::vector<double> v1 = {0.4}, v2 = {3.0}, mid = {1.7};
  EXPECT_NEAR(dual_psi(c, mid, sub),
              0.5 * (dual_psi(c, v1, sub) + dual_psi(c, v2, sub)), 1e-14);
}

TEST(DualPsiTest, FixtureAtZero) {
  const ConstrainedProblem p = coverage_problem(0.3);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  const std::vector<double> v = {0.0};
  EXPECT_DOUBLE_EQ(dual_psi(LinearClassifier::zeros(1), v, sub), 0.5);
  EXPECT_THROW(dual_psi(LinearClassifier::zeros(1), {}, sub), ConfigError);
}

TEST(SolveSaddleTest, NoConstraintsIsOneSvmCall) {
  const ConstrainedProblem p = coverage_problem(-1.0);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  SolverTrace trace;
  TraceContext ctx;
  ctx.trace = &trace;
  const SaddleResult r = solve_saddle(sub, 1e-4, {}, ctx);
  EXPECT_EQ(trace.count(TraceLevel::kSaddle), 0u);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_LE(r.upper - r.lower, 1e-4);
  EXPECT_TRUE(audit_trace(trace).passed);
}

TEST(SolveSaddleTest, BindingCoverage) {
  const ConstrainedProblem p = coverage_problem(0.3, 2.0);
  const LinearClassifier anchor = find_initial_point(p, BiasMode::kFree);
  EXPECT_NEAR(anchor.bias, 0.2, 1e-12);
  const ConvexSubproblem sub(p, anchor);
  for (CutChooserKind chooser :
       {CutChooserKind::kMaximization, CutChooserKind::kCentroid}) {
    SolverTrace trace;
    TraceContext ctx;
    ctx.trace = &trace;
    SaddleOptions o;
    o.chooser = chooser;
    const double eps = 1e-3;
    const SaddleResult r = solve_saddle(sub, eps, o, ctx);
    ASSERT_EQ(r.multipliers.size(), 1u);
    EXPECT_GT(r.multipliers[0], 0.0);
    EXPECT_LE(r.upper - r.lower, eps);
    EXPECT_NEAR(sub.bound_constraint_values(r.classifier)[0], 0.0, 0.05);
    EXPECT_LE(sub.bound_constraint_values(r.recovered)[0], 1e-9);
    EXPECT_TRUE(audit_trace(trace).passed) << audit_trace(trace).to_string();
  }
}

TEST(SolveSaddleTest, LooseConstraintMatchesUnconstrained) {
  const ConstrainedProblem loose = coverage_problem(0.9);
  const ConstrainedProblem free = coverage_problem(-1.0);
  const ConvexSubproblem sub(loose, LinearClassifier::zeros(1));
  const ConvexSubproblem free_sub(free, LinearClassifier::zeros(1));
  const double eps = 1e-4;
  const SaddleResult r = solve_saddle(sub, eps, {});
  const SaddleResult u = solve_saddle(free_sub, eps, {});
  EXPECT_EQ(r.multipliers, (MultiplierVector{0.0}));
  EXPECT_NEAR(sub.bound_objective(r.recovered),
              free_sub.bound_objective(u.classifier), eps);
}

TEST(SolveSaddleTest, CentroidNeedsOneConstraint) {
  const DatasetCollection d = two_points();
  const auto cov = build_metric(MetricKind::kCoverage, "s", d);
  const ConstrainedProblem p(d, build_metric(MetricKind::kErrorRate, "s", d),
                             {make_constraint(cov, 0.9),
                              make_constraint(cov, 0.95)},
                             0.1, 10.0);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  SaddleOptions o;
  o.chooser = CutChooserKind::kCentroid;
  EXPECT_THROW(solve_saddle(sub, 1e-3, o), ConfigError);
}

TEST(SolveSaddleTest, IterationCapCarriesBestIterate) {
  const ConstrainedProblem p = coverage_problem(0.3, 2.0);
  const ConvexSubproblem sub(p, find_initial_point(p, BiasMode::kFree));
  SaddleOptions o;
  o.max_iterations = 1;
  try {
    solve_saddle(sub, 1e-9, o);
    FAIL() << "expected SaddleError";
  } catch (const SaddleError& e) {
    EXPECT_EQ(e.best().iterations, 1u);
    EXPECT_EQ(e.exit_code(), ExitCode::kSolver);
  }
}

TEST(ChooserNamesTest, RoundTrip) {
  for (CutChooserKind k :
       {CutChooserKind::kMaximization, CutChooserKind::kCentroid}) {
    EXPECT_EQ(parse_cut_chooser(cut_chooser_name(k)), k);
  }
  EXPECT_FALSE(parse_cut_chooser("nope").has_value());
}

}  // namespace
}  // namespace ratecon
