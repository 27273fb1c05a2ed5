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

#ifndef RATECON_EXPERIMENTS_HPP_
#define RATECON_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "ratecon/config.hpp"
#include "ratecon/libsvm.hpp"

namespace ratecon {

// Runs the tasks on up to `workers` threads (0: hardware concurrency) and
// returns their results in task order. Rethrows the first failure in task
// order.
template <typename R>
std::vector<R> run_ordered(const std::vector<std::function<R()>>& tasks,
                           std::size_t workers) {
  std::vector<R> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// Fairness ratios are s_p(male) / s_p(female); "randomized" values are the
// exact expectations of the randomized rule (ramp rates).
struct AdultRow {
  std::string method;  // svm, constrained, thresholded_svm, zafar
  double hyper = 0.0;  // kappa, or c for zafar, 0 for svm
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double train_error = 0.0;
  double test_error = 0.0;
  double train_error_randomized = 0.0;
  double test_error_randomized = 0.0;
  double train_ratio = 0.0;
  double test_ratio = 0.0;
  double train_ratio_randomized = 0.0;
  double test_ratio_randomized = 0.0;
  // <w, mean(male) - mean(female)> on the training split.
  double covariance = 0.0;
  double ramp_objective = 0.0;
  // Zero-anchor hinge objective plus regularizer on the training split.
  double hinge_objective = 0.0;
  std::string note;
};

struct AdultSummary {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_female = 0;
  std::size_t n_male = 0;
  std::size_t positives_female = 0;
  std::size_t positives_male = 0;
  double lambda = 0.0;
  std::vector<AdultRow> rows;
  std::vector<std::string> warnings;
};

AdultSummary run_experiment_adult(const AdultConfig& config);
void write_adult_csv(std::ostream& out, const AdultSummary& summary);

// Synthetic stand-in for the deployed-model churn setting.
//
// Points are 2-d: label +1 with probability 0.3, positives drawn from an
// equal mixture of N((1, 1), 0.8^2 I) and N((-0.5, 1.5), 0.6^2 I), negatives
// from N((-0.5, -0.5), I). Features are (x1, x2, x1^2/4, x2^2/4, x1 x2/4).
// The deployed model predicts +1 iff x1 > 0. D1 keeps a candidate with
// probability exp(-2 |x1|), concentrating it near the deployed
// boundary; D2 (labeled) and D3 (unlabeled) are i.i.d. Each set is split
// 80/20 into train and test.
struct ChurnData {
  LibsvmData d1_train, d1_test;
  LibsvmData d2_train, d2_test;
  LibsvmData d3_train, d3_test;
  std::vector<int> d2_train_baseline, d2_test_baseline;
  std::vector<int> d3_train_baseline, d3_test_baseline;
};

ChurnData generate_churn_data(const ChurnConfig& config);

struct ChurnRow {
  std::string method;  // deployed, recall_only, constrained, thresholded_svm
  double tau = 1.0;
  std::string split;
  double churn = 0.0;
  double churn_randomized = 0.0;
  double churn_mc = 0.0;
  double error = 0.0;
  double error_randomized = 0.0;
  double recall = 0.0;
  double recall_randomized = 0.0;
  // The recall-only model exceeds tau on the training split.
  bool active = false;
};

struct ChurnSummary {
  double deployed_recall = 0.0;   // indicator recall on D2 train
  double recall_target = 0.0;     // randomized-rule recall of the start point
  double init_scale = 0.0;
  std::vector<ChurnRow> rows;
  std::vector<std::string> warnings;
};

// Minimizes error on D1 plus false positives on D2 subject to recall on D2
// at least the recall target and churn on D3 at most tau. Training starts
// from the deployed model scaled until its randomized churn is below
// min(tau) / 4; the recall target is that start point's randomized recall.
ChurnSummary run_experiment_churn_synthetic(const ChurnConfig& config);
void write_churn_csv(std::ostream& out, const ChurnSummary& summary);

}  // namespace ratecon

#endif  // RATECON_EXPERIMENTS_HPP_
