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

#ifndef RATECON_CONFIG_HPP_
#define RATECON_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratecon/metrics.hpp"
#include "ratecon/saddle.hpp"
#include "ratecon/svm.hpp"

namespace ratecon {

// coefficient * metric, optionally restricted to one group.
struct MetricTerm {
  double coefficient = 1.0;
  MetricKind kind = MetricKind::kErrorRate;
  std::optional<std::string> group;

  bool operator==(const MetricTerm&) const = default;
};

using MetricExpr = std::vector<MetricTerm>;

// "error_rate + 0.5 * false_positives@F - coverage". Throws ConfigError.
MetricExpr parse_metric_expr(const std::string& text);
std::string format_metric_expr(const MetricExpr& expr);

struct DataConfig {
  std::filesystem::path train;
  std::optional<std::filesystem::path> test;
  std::optional<std::size_t> dimension;
  // 1-based feature index; examples with a nonzero value fall in
  // group_present, the rest in group_absent.
  std::optional<std::uint32_t> group_feature;
  std::string group_present = "1";
  std::string group_absent = "0";
  // One group name per line, aligned with the data file.
  std::optional<std::filesystem::path> train_groups;
  std::optional<std::filesystem::path> test_groups;
  // One +1/-1 baseline prediction per line.
  std::optional<std::filesystem::path> train_baseline;
  std::optional<std::filesystem::path> test_baseline;
};

enum class ConstraintType { kBound, kRatio, kFairness };

struct ConstraintConfig {
  std::string name;
  ConstraintType type = ConstraintType::kBound;
  // kBound: metric <= at_most or metric >= at_least.
  MetricExpr metric;
  std::optional<double> at_most;
  std::optional<double> at_least;
  // kRatio: numerator (direction) ratio * denominator.
  MetricExpr numerator;
  MetricExpr denominator;
  double ratio = 1.0;
  Direction direction = Direction::kAtLeast;
  // kFairness: s_p(A) >= kappa s_p(B), optionally within one label.
  std::string group_a;
  std::string group_b;
  double kappa = 0.8;
  FairnessForm form = FairnessForm::kScaledByKappa;
  std::optional<int> label;
};

struct SolverConfig {
  // Unset means 1/n with n the training set size.
  std::optional<double> lambda;
  double multiplier_cap = 1e3;
  std::size_t iterations = 5;
  double eps = 1e-3;
  double feas_tol = 1e-6;
  bool early_stop = false;
  CutChooserKind cut_chooser = CutChooserKind::kMaximization;
  BiasChooserKind bias_chooser = BiasChooserKind::kMinimization;
  BiasMode bias_mode = BiasMode::kFree;
  std::uint64_t seed = 1;
  std::size_t max_saddle_iterations = 1000;
  std::size_t max_bias_iterations = 500;
  std::size_t max_epochs = 100000;
  // Model file to start from instead of the zero-weight initial point.
  std::optional<std::filesystem::path> init_model;
};

struct OutputConfig {
  std::string model = "model.txt";
  std::string trace = "trace.csv";
  std::string report = "report.txt";
};

struct EvalConfig {
  std::size_t mc_draws = 0;
  std::uint64_t mc_seed = 1;
};

struct RunConfig {
  DataConfig data;
  MetricExpr objective;
  std::vector<ConstraintConfig> constraints;
  // Extra metrics printed in reports.
  std::vector<MetricExpr> report_metrics;
  SolverConfig solver;
  OutputConfig output;
  EvalConfig eval;
};

// INI grammar:
//
//   [data]              train, test, dimension, group_feature,
//                       group_present, group_absent, train_groups,
//                       test_groups, train_baseline, test_baseline
//   [objective]         metric
//   [constraint NAME]   type = bound | ratio | fairness, then
//                       bound:    metric, at_most | at_least
//                       ratio:    numerator, denominator, ratio,
//                                 direction = at_least | at_most
//                       fairness: group_a, group_b, kappa,
//                                 form = kappa | inverse_kappa, label
//   [report]            metrics (comma-separated expressions)
//   [solver]            lambda (number or 1/n), multiplier_cap,
//                       iterations, eps, feas_tol, early_stop,
//                       cut_chooser, bias_chooser, bias, seed,
//                       max_saddle_iterations, max_bias_iterations,
//                       max_epochs, init_model
//   [output]            model, trace, report
//   [evaluate]          mc_draws, mc_seed
//
// Relative paths resolve against `base_dir`. Unknown sections or keys and
// missing files are ConfigErrors.
RunConfig parse_run_config(const std::string& text,
                           const std::filesystem::path& base_dir);
// Throws IoError when unreadable.
RunConfig load_run_config(const std::filesystem::path& path);

struct AdultConfig {
  std::filesystem::path train;
  std::filesystem::path test;
  std::size_t dimension = 123;
  // 1-based indices of the two gender indicator features.
  std::uint32_t female_feature = 72;
  std::uint32_t male_feature = 73;
  std::vector<double> kappas = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> zafar_c = {0.0, 0.01, 0.1, 1.0, 1e6};
  std::size_t repeats = 3;
  std::optional<double> lambda;
  BiasMode bias_mode = BiasMode::kNone;
  std::size_t iterations = 5;
  double eps = 1e-3;
  double multiplier_cap = 1e3;
  std::uint64_t seed = 1;
  std::size_t workers = 0;  // 0: hardware concurrency
  bool thresholded = true;
  bool zafar = true;
};

// [experiment] section with the fields above; kappas and zafar_c are
// comma-separated lists.
AdultConfig parse_adult_config(const std::string& text,
                               const std::filesystem::path& base_dir);
AdultConfig load_adult_config(const std::filesystem::path& path);

struct ChurnConfig {
  // Total examples per dataset before the 80/20 train/test split.
  std::size_t n_biased = 2500;
  std::size_t n_labeled = 1250;
  std::size_t n_unlabeled = 1250;
  std::vector<double> taus = {0.02, 0.05, 0.1, 0.15, 0.2};
  double lambda = 1e-3;
  std::size_t iterations = 5;
  double eps = 1e-3;
  double multiplier_cap = 1e3;
  std::size_t mc_draws = 100000;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
};

ChurnConfig parse_churn_config(const std::string& text);
ChurnConfig load_churn_config(const std::filesystem::path& path);

}  // namespace ratecon

#endif  // RATECON_CONFIG_HPP_
