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
#include "ratecon/subproblem.hpp"
#include "test_util.hpp"

namespace ratecon {
namespace {

using testing::labeled;

DatasetCollection symmetric() {
  return partition_labeled_data(
      "s", 1,
      std::vector<LabeledExample>{labeled({1.0}, 1), labeled({-1.0}, -1)});
}

TEST(MajorizeMinimizeTest, OneIterationUnconstrainedIsOneSvmSolve) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(d, build_metric(MetricKind::kErrorRate, "s", d),
                             {}, 0.1, 1e3);
  MmOptions o;
  o.iterations = 1;
  o.eps = 1e-6;
  const MmResult r = majorize_minimize(p, LinearClassifier::zeros(1), o);
  const ConvexSubproblem sub(p, LinearClassifier::zeros(1));
  const SvmResult svm =
      svm_optimize(sub, {}, sub.bound_objective(sub.anchor()), 1e-6, {});
  ASSERT_EQ(r.iterates.size(), 2u);
  EXPECT_EQ(r.classifier, svm.classifier);
}

TEST(MajorizeMinimizeTest, OneDimensionalFixtureDescends) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(d, build_metric(MetricKind::kErrorRate, "s", d),
                             {}, 0.1, 1e3);
  MmOptions o;
  o.eps = 1e-5;
  const MmResult r = majorize_minimize(p, LinearClassifier::zeros(1), o);
  ASSERT_EQ(r.iterates.size(), 6u);
  for (std::size_t t = 1; t < r.iterates.size(); ++t) {
    EXPECT_LE(r.iterates[t].objective, r.iterates[t - 1].objective + o.eps);
  }
  EXPECT_LE(r.iterates.back().objective, r.iterates.front().objective);
  const double grid = testing::grid_min_1d(p, 5.0, 0.01);
  EXPECT_NEAR(r.iterates.back().objective, grid, 1e-3);
  EXPECT_TRUE(audit_trace(r.trace).passed);
}

TEST(MajorizeMinimizeTest, RejectsInfeasibleStart) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(
      d, build_metric(MetricKind::kErrorRate, "s", d),
      {make_constraint(build_metric(MetricKind::kCoverage, "s", d), 0.1)}, 0.1,
      1e3);
  EXPECT_THROW(majorize_minimize(p, LinearClassifier::zeros(1), {}),
               InfeasibleError);
}

TEST(FindInitialPointTest, NoConstraintsGivesZeros) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(d, build_metric(MetricKind::kErrorRate, "s", d),
                             {}, 0.1, 1e3);
  EXPECT_EQ(find_initial_point(p, BiasMode::kFree), LinearClassifier::zeros(1));
}

TEST(FindInitialPointTest, SymmetricHalfCoverageKeepsZeroBias) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(
      d, build_metric(MetricKind::kErrorRate, "s", d),
      {make_constraint(build_metric(MetricKind::kCoverage, "s", d), 0.5)}, 0.1,
      1e3);
  EXPECT_EQ(find_initial_point(p, BiasMode::kFree).bias, 0.0);
}

TEST(FindInitialPointTest, ContradictoryConstraints) {
  const DatasetCollection d = symmetric();
  const auto cov = build_metric(MetricKind::kCoverage, "s", d);
  const ConstrainedProblem p(
      d, build_metric(MetricKind::kErrorRate, "s", d),
      {make_constraint(cov.scaled(-1.0), -0.9), make_constraint(cov, 0.1)},
      0.1, 1e3);
  EXPECT_THROW(find_initial_point(p, BiasMode::kFree), InfeasibleError);
}

TEST(FindInitialPointTest, BiasNoneChecksZero) {
  const DatasetCollection d = symmetric();
  const ConstrainedProblem p(
      d, build_metric(MetricKind::kErrorRate, "s", d),
      {make_constraint(build_metric(MetricKind::kCoverage, "s", d), 0.3)}, 0.1,
      1e3);
  EXPECT_THROW(find_initial_point(p, BiasMode::kNone), InfeasibleError);
  EXPECT_NEAR(find_initial_point(p, BiasMode::kFree).bias, 0.2, 1e-12);
}

TEST(MajorizeMinimizeTest, ConstrainedStaysFeasible) {
  const DatasetCollection d = partition_labeled_data(
      "s", 1,
      std::vector<LabeledExample>{labeled({1.0}, 1), labeled({0.5}, 1),
                                  labeled({-0.3}, 1), labeled({-1.0}, -1),
                                  labeled({0.2}, -1), labeled({-0.6}, -1)});
  const ConstrainedProblem p(
      d, build_metric(MetricKind::kErrorRate, "s", d),
      {make_constraint(build_metric(MetricKind::kCoverage, "s", d), 0.3)}, 0.1,
      1e3);
  MmOptions o;
  o.eps = 1e-4;
  const MmResult r =
      majorize_minimize(p, find_initial_point(p, BiasMode::kFree), o);
  for (std::size_t t = 0; t < r.iterates.size(); ++t) {
    EXPECT_LE(r.iterates[t].max_violation, 1e-6);
    if (t > 0) {
      EXPECT_LE(r.iterates[t].objective,
                r.iterates[t - 1].objective + o.eps + 1e-9);
    }
  }
  EXPECT_TRUE(audit_trace(r.trace).passed);
}

}  // namespace
}  // namespace ratecon
