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

#ifndef RATECON_BASELINES_HPP_
#define RATECON_BASELINES_HPP_

#include <string>

#include "ratecon/classifier.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/rate_combination.hpp"
#include "ratecon/saddle.hpp"
#include "ratecon/svm.hpp"

namespace ratecon {

struct BaselineOptions {
  SvmOptions svm;
  double eps = 1e-4;
  std::size_t max_iterations = 1000;
};

// Hinge loss anchored at zero (every example on both hinges) plus
// lambda/2 |w|^2, solved to eps.
LinearClassifier train_unconstrained_svm(const DatasetCollection& datasets,
                                         const LinearRateCombination& objective,
                                         double lambda,
                                         const BaselineOptions& options = {});

// Moves the bias so the indicator-rate constraint holds, staying as close
// to the original bias as possible; ties go to the smaller coverage. The
// constraint must use a single polarity (ConfigError otherwise). Throws
// InfeasibleError with the achievable range when no bias works.
LinearClassifier threshold_for_constraint(const LinearClassifier& classifier,
                                          const RateConstraint& constraint,
                                          const DatasetCollection& datasets);

// mean(a) - mean(b)
SparseVector zafar_mean_difference(const UnlabeledDataset& a,
                                   const UnlabeledDataset& b);

struct ZafarResult {
  LinearClassifier classifier;
  SaddleResult saddle;
  // <w, xbar>
  double covariance = 0.0;
};

// The hinge SVM with -c <= <w, xbar> <= c, both sides written as hinge
// rates of a one-example dataset. Bias mode must be kNone.
ZafarResult train_zafar_baseline(const DatasetCollection& datasets,
                                 const LinearRateCombination& objective,
                                 const SparseVector& xbar, double lambda,
                                 double c, const BaselineOptions& options = {});

// Id of the one-example dataset added by train_zafar_baseline.
inline const std::string kZafarDatasetId = "zafar/xbar";

}  // namespace ratecon

#endif  // RATECON_BASELINES_HPP_
