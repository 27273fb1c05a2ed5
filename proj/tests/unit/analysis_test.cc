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

#include <cmath>
#include <sstream>
#include <vector>

#include "ratecon/analysis.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/metrics.hpp"
#include "test_util.hpp"

namespace ratecon {
namespace {

using testing::make_1d;

DatasetCollection one_dataset() {
  DatasetCollection d(1);
  d.add(make_1d("D", {1.0, -1.0, 0.5, 0.0}));
  return d;
}

LinearRateCombination coverage() {
  return LinearRateCombination().add("D", Polarity::kPositive, 1.0);
}

TEST(CoefficientSumTest, Unconstrained) {
  const ConstrainedProblem p(one_dataset(), coverage(), {}, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(coefficient_sum_B(p), 1.0);
}

TEST(CoefficientSumTest, ConstraintScaledByCap) {
  const ConstrainedProblem p(one_dataset(), coverage(),
                             {make_constraint(coverage(), 0.5)}, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(coefficient_sum_B(p), 3.0);
}

TEST(CoefficientSumTest, FixtureByHand) {
  DatasetCollection d(1);
  d.add(make_1d("A", {1.0}));
  d.add(make_1d("B", {2.0, 3.0}));
  LinearRateCombination obj;
  obj.add("A", Polarity::kNegative, 0.25).add("B", Polarity::kPositive, 0.75);
  LinearRateCombination lhs;
  lhs.add("A", Polarity::kPositive, 0.5).add("B", Polarity::kNegative, 1.5);
  const ConstrainedProblem p(d, obj, {make_constraint(lhs, 1.0)}, 0.1, 4.0);
  // 0.25 + 0.75 + 4 * (0.5 + 1.5)
  EXPECT_DOUBLE_EQ(coefficient_sum_B(p), 9.0);
}

TEST(RademacherTest, Values) {
  EXPECT_DOUBLE_EQ(rademacher_bound(1.0, 1.0, 1.0, 4), 1.25);
  EXPECT_DOUBLE_EQ(rademacher_bound(1.0, 1.0, 1.0, 16),
                   0.5 * rademacher_bound(1.0, 1.0, 1.0, 4));
  EXPECT_DOUBLE_EQ(rademacher_bound(1.0, 0.0, 1.0, 25), 0.1);
  EXPECT_THROW(rademacher_bound(0.0, 1.0, 1.0, 4), ConfigError);
  EXPECT_THROW(rademacher_bound(1.0, 1.0, 1.0, 0), ConfigError);
}

TEST(GeneralizationETest, HandDerivedThirteen) {
  EXPECT_EQ(generalization_E(1.0, 1.0, 1.0, 4.0 * std::exp(-8.0), 1), 13.0);
}

TEST(GeneralizationETest, SmallerDeltaIncreasesE) {
  double previous = 0.0;
  for (double delta : {0.5, 0.1, 0.01, 1e-4, 1e-8}) {
    const double e = generalization_E(1.0, 1.0, 1.0, delta, 2);
    EXPECT_GT(e, previous);
    previous = e;
  }
  EXPECT_THROW(generalization_E(1.0, 1.0, 1.0, 0.0, 1), ConfigError);
  EXPECT_THROW(generalization_E(1.0, 1.0, 1.0, 1.0, 1), ConfigError);
}

TEST(GeneralizationReportTest, SlacksAndDeterminism) {
  const ConstrainedProblem p(one_dataset(), coverage(),
                             {make_constraint(coverage(), 0.5)}, 0.5, 2.0);
  const GeneralizationReport a = generalization_report(p, 0.05);
  const GeneralizationReport b = generalization_report(p, 0.05);
  EXPECT_EQ(a.to_string(), b.to_string());
  ASSERT_EQ(a.slacks.size(), 1u);
  EXPECT_DOUBLE_EQ(a.slacks[0].slack, a.e_constant / 2.0);
  EXPECT_DOUBLE_EQ(a.constraint_slacks[0], a.e_constant / 2.0);
  EXPECT_DOUBLE_EQ(a.e_constant, generalization_E(p, 1.0, 0.05, 1));
}

TraceRow saddle_row(std::size_t t, double lower, double upper) {
  TraceRow r;
  r.level = TraceLevel::kSaddle;
  r.mm_iter = 1;
  r.saddle_iter = t;
  r.lower = lower;
  r.upper = upper;
  r.eps = (upper - lower) / 2.0;
  r.point = "0";
  r.value = upper;
  r.extra = lower;
  r.chooser = "max";
  r.constraints = 1;
  return r;
}

TEST(AuditTest, ForgedIncreasingUpperFails) {
  SolverTrace t;
  t.add(saddle_row(1, 0.0, 1.0));
  t.add(saddle_row(2, 0.1, 1.5));
  const AuditReport r = audit_trace(t);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.failures.empty());
}

TEST(AuditTest, MonotoneForgedTracePasses) {
  SolverTrace t;
  t.add(saddle_row(1, 0.0, 1.0));
  t.add(saddle_row(2, 0.1, 0.8));
  EXPECT_TRUE(audit_trace(t).passed);
}

TEST(AuditTest, DecreasingLowerAndCrossedBoundsFail) {
  SolverTrace a;
  a.add(saddle_row(1, 0.5, 1.0));
  a.add(saddle_row(2, 0.2, 0.9));
  EXPECT_FALSE(audit_trace(a).passed);
  SolverTrace b;
  b.add(saddle_row(1, 1.0, 0.5));
  EXPECT_FALSE(audit_trace(b).passed);
}

TEST(AuditTest, CentroidFloorViolationFails) {
  TraceRow r = saddle_row(1, 0.0, 1.0);
  r.chooser = "centroid";
  r.eps = 0.001;
  r.area = 1.0;
  SolverTrace t;
  t.add(r);
  EXPECT_FALSE(audit_trace(t).passed);
}

TEST(AuditTest, WeakDualityViolationFails) {
  TraceRow r;
  r.level = TraceLevel::kSdca;
  r.lower = 1.0;
  r.upper = 0.5;
  r.value = -0.5;
  SolverTrace t;
  t.add(r);
  EXPECT_FALSE(audit_trace(t).passed);
}

TEST(AuditTest, EmptyTracePasses) {
  EXPECT_TRUE(audit_trace(SolverTrace()).passed);
}

}  // namespace
}  // namespace ratecon
