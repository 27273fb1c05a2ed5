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

#ifndef RATECON_SVM_HPP_
#define RATECON_SVM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "ratecon/classifier.hpp"
#include "ratecon/sdca.hpp"
#include "ratecon/subproblem.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

enum class BiasMode { kFree, kNone };
enum class BiasChooserKind { kMinimization, kCentroid };

std::optional<BiasMode> parse_bias_mode(std::string_view name);
std::string_view bias_mode_name(BiasMode mode);
std::optional<BiasChooserKind> parse_bias_chooser(std::string_view name);
std::string_view bias_chooser_name(BiasChooserKind kind);

struct SvmOptions {
  BiasMode bias_mode = BiasMode::kFree;
  BiasChooserKind chooser = BiasChooserKind::kMinimization;
  std::uint64_t seed = 0;
  std::size_t max_bias_iterations = 500;
  std::size_t max_epochs = 100000;
};

struct SvmResult {
  LinearClassifier classifier;
  double upper = 0.0;  // Psi at the classifier
  double lower = 0.0;  // certified lower bound on min Psi
  std::size_t bias_iterations = 0;
  std::size_t sdca_epochs = 0;
};

// Half-width of the bias search interval at multipliers v:
// 1/2 + X min{X B(v) / lambda, sqrt(2 B(v) / lambda)}, where X is the largest
// example norm and B(v) the total coefficient mass at v.
double bias_half_width(const ConvexSubproblem& sub, std::span<const double> v);

// Minimizes Psi(., ., v) over w and b for one subproblem. Keeps the dual
// variables between calls as a warm start; they are clamped into the new
// boxes when v changes.
class SvmSolver {
 public:
  SvmSolver(const ConvexSubproblem& sub, SvmOptions options);

  // Returns (w, b) with upper - lower <= eps, where lower certifies
  // min Psi(., ., v). upper_hint must bound that minimum from above.
  // With bias mode kNone, b = 0 and only SDCA runs.
  SvmResult solve(std::span<const double> v, double upper_hint, double eps,
                  const TraceContext& trace = {});

 private:
  const ConvexSubproblem* sub_;
  SvmOptions options_;
  std::optional<DualState> warm_;
};

// One-shot form of SvmSolver::solve.
SvmResult svm_optimize(const ConvexSubproblem& sub, std::span<const double> v,
                       double upper_hint, double eps,
                       const SvmOptions& options,
                       const TraceContext& trace = {});

}  // namespace ratecon

#endif  // RATECON_SVM_HPP_
