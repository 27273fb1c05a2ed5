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

#ifndef RATECON_RUNNER_HPP_
#define RATECON_RUNNER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratecon/analysis.hpp"
#include "ratecon/config.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/libsvm.hpp"
#include "ratecon/majorization.hpp"
#include "ratecon/model_io.hpp"
#include "ratecon/rate_combination.hpp"

namespace ratecon {

// One data file cut into the partition cells used by metrics. Cells of the
// whole sample are named from `prefix`; cells of group g from prefix + "@g".
struct Split {
  std::string prefix;
  LibsvmData data;
  std::vector<std::string> groups;  // empty without group information
  std::vector<int> baseline;        // empty without baseline predictions
  DatasetCollection datasets{0};
};

Split make_split(std::string prefix, LibsvmData data,
                 std::vector<std::string> groups, std::vector<int> baseline);

// Reads the train (and test) files named in the config.
struct LoadedData {
  Split train;
  std::optional<Split> test;
};
LoadedData load_data(const DataConfig& config);

std::string group_prefix(const std::string& prefix, const std::string& group);

LinearRateCombination build_expr(const MetricExpr& expr,
                                 const std::string& prefix,
                                 const DatasetCollection& datasets);
RateConstraint build_constraint(const ConstraintConfig& config,
                                const std::string& prefix,
                                const DatasetCollection& datasets);

double resolve_lambda(const SolverConfig& solver, std::size_t n_train);
MmOptions mm_options(const SolverConfig& solver);

struct TrainResult {
  Model model;
  MmResult mm;
  GeneralizationReport generalization;
  AuditReport audit;
  double lambda = 0.0;
  std::string report;
};

// Builds the problem on the training split, finds or loads the starting
// point and runs majorization-minimization.
TrainResult train_model(const RunConfig& config, const LoadedData& data);

// Indicator, ramp and (with draws > 0) Monte-Carlo randomized metric values
// of the objective, the constraints and the report metrics on every split.
std::string evaluation_report(const RunConfig& config, const LoadedData& data,
                              const Model& model);

// Monte-Carlo estimate of a combination under the randomized rule, with
// `draws` samples per referenced dataset.
double randomized_estimate(const LinearRateCombination& combo,
                           const DatasetCollection& datasets,
                           const LinearClassifier& classifier,
                           std::size_t draws, std::uint64_t seed);

// Writes model, trace and report into out_dir (created if needed).
TrainResult run_train(const RunConfig& config,
                      const std::filesystem::path& out_dir);
std::string run_eval(const RunConfig& config,
                     const std::filesystem::path& model_path);

}  // namespace ratecon

#endif  // RATECON_RUNNER_HPP_
