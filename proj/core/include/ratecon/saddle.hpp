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

#ifndef RATECON_SADDLE_HPP_
#define RATECON_SADDLE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ratecon/classifier.hpp"
#include "ratecon/cutting_plane.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/subproblem.hpp"
#include "ratecon/svm.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

enum class CutChooserKind { kMaximization, kCentroid };

std::optional<CutChooserKind> parse_cut_chooser(std::string_view name);
std::string_view cut_chooser_name(CutChooserKind kind);

struct SaddleOptions {
  CutChooserKind chooser = CutChooserKind::kMaximization;
  SvmOptions svm;
  std::size_t max_iterations = 1000;
};

struct SaddleResult {
  // Iterate with the largest certified lower bound.
  LinearClassifier classifier;
  MultiplierVector multipliers;
  // Convex combination of the anchor and the iterates that satisfies every
  // bound constraint (up to the anchor's own violation) with objective no
  // worse than the anchor's.
  LinearClassifier recovered;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  bool multiplier_cap_hit = false;
  // l0 exceeded every later lower bound.
  bool lower_anomaly = false;
  std::vector<std::string> warnings;
};

class SaddleError : public SolverError {
 public:
  SaddleError(const std::string& what, SaddleResult best)
      : SolverError(what), best_(std::move(best)) {}
  const SaddleResult& best() const { return best_; }

 private:
  SaddleResult best_;
};

// Psi(w, b, v) = sum_i (alpha_i + sum_j v_j alpha_ij) rp_i
//              + (beta_i + sum_j v_j beta_ij) rn_i
//              + lambda/2 |w|^2 - sum_j v_j gamma_j
// with the anchored bound rates.
double dual_psi(const LinearClassifier& classifier, std::span<const double> v,
                const ConvexSubproblem& sub);

// Cutting-plane maximization of the dual function over [0, V]^m, stopping at
// U - L <= eps. With no constraints this is one SVM solve. Throws
// SaddleError with the best iterate when max_iterations is exceeded.
SaddleResult solve_saddle(const ConvexSubproblem& sub, double eps,
                          const SaddleOptions& options,
                          const TraceContext& trace = {});

}  // namespace ratecon

#endif  // RATECON_SADDLE_HPP_
