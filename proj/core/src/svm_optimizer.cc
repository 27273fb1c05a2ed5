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

#include "ratecon/svm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ratecon/cutting_plane.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/random.hpp"

namespace ratecon {

namespace {

std::uint64_t call_seed(std::uint64_t seed, std::size_t saddle_iter,
                        std::size_t bias_iter) {
  return splitmix64(splitmix64(seed ^ splitmix64(saddle_iter)) ^ bias_iter);
}

constexpr std::array<std::pair<BiasMode, std::string_view>, 2> kBiasModes = {{
    {BiasMode::kFree, "free"},
    {BiasMode::kNone, "none"},
}};

constexpr std::array<std::pair<BiasChooserKind, std::string_view>, 2>
    kBiasChoosers = {{
        {BiasChooserKind::kMinimization, "min"},
        {BiasChooserKind::kCentroid, "centroid"},
    }};

}  // namespace

std::optional<BiasMode> parse_bias_mode(std::string_view name) {
  for (const auto& [mode, text] : kBiasModes) {
    if (text == name) return mode;
  }
  return std::nullopt;
}

std::string_view bias_mode_name(BiasMode mode) {
  for (const auto& [m, text] : kBiasModes) {
    if (m == mode) return text;
  }
  return "unknown";
}

std::optional<BiasChooserKind> parse_bias_chooser(std::string_view name) {
  for (const auto& [kind, text] : kBiasChoosers) {
    if (text == name) return kind;
  }
  return std::nullopt;
}

std::string_view bias_chooser_name(BiasChooserKind kind) {
  for (const auto& [k, text] : kBiasChoosers) {
    if (k == kind) return text;
  }
  return "unknown";
}

double bias_half_width(const ConvexSubproblem& sub,
                       std::span<const double> v) {
  const ConstrainedProblem& problem = sub.problem();
  double mass = 0.0;
  for (const DatasetTerms& t : problem.terms()) {
    mass += t.alpha + t.beta;
    for (std::size_t j = 0; j < v.size(); ++j) {
      mass += v[j] * (t.constraint_alpha[j] + t.constraint_beta[j]);
    }
  }
  const double x = problem.max_norm();
  const double lambda = problem.lambda();
  const double norm_w =
      std::min(x * mass / lambda, std::sqrt(2.0 * mass / lambda));
  return 0.5 + x * norm_w;
}

SvmSolver::SvmSolver(const ConvexSubproblem& sub, SvmOptions options)
    : sub_(&sub), options_(options) {}

SvmResult SvmSolver::solve(std::span<const double> v, double upper_hint,
                           double eps, const TraceContext& trace) {
  if (!(eps > 0.0)) throw ConfigError("SVM tolerance must be positive");
  const ExampleCoefficients coeffs = build_example_coefficients(*sub_, v);
  const WeightedSvm svm(*sub_, coeffs);
  DualState state = warm_ ? clamp_state(svm, std::move(*warm_))
                          : zero_state(svm);
  warm_.reset();

  SdcaOptions sdca;
  sdca.max_epochs = options_.max_epochs;
  SvmResult result;

  if (options_.bias_mode == BiasMode::kNone) {
    sdca.gap = eps;
    sdca.seed = call_seed(options_.seed, trace.saddle_iter, 0);
    state = sdca_optimize(svm, 0.0, sdca, std::move(state), trace);
    result.classifier = {state.weights, 0.0};
    result.upper = state.primal;
    result.lower = state.dual;
    result.sdca_epochs = state.epochs;
    warm_ = std::move(state);
    return result;
  }

  const double half_width = bias_half_width(*sub_, v);
  const double l0 = coeffs.constant;
  const double u0 = options_.chooser == BiasChooserKind::kCentroid
                        ? 2.0 * upper_hint - l0
                        : upper_hint;
  BiasCutStore store(-half_width, half_width, l0, std::max(u0, l0));

  double best_upper = std::numeric_limits<double>::infinity();
  const char* chooser_name =
      options_.chooser == BiasChooserKind::kCentroid ? "centroid" : "min";
  for (std::size_t t = 1;; ++t) {
    const BiasChoice choice =
        options_.chooser == BiasChooserKind::kCentroid
            ? bias_cut_chooser_centroid(store, eps)
            : bias_cut_chooser_min(store);

    TraceRow row = trace.row(TraceLevel::kBias);
    row.bias_iter = t;
    row.lower = choice.lower;
    row.upper = choice.upper;
    row.area = choice.area;
    if (t > 1 && best_upper - choice.lower <= eps) {
      row.value = best_upper;
      row.chooser = "stop";
      trace.add(std::move(row));
      result.lower = choice.lower;
      break;
    }
    if (t > options_.max_bias_iterations) {
      warm_ = std::move(state);
      throw SolverError("bias search reached " +
                        std::to_string(options_.max_bias_iterations) +
                        " iterations with gap " +
                        format_double(best_upper - choice.lower));
    }

    TraceContext inner = trace;
    inner.bias_iter = t;
    sdca.gap = std::max(choice.eps, eps / 4.0) / 2.0;
    sdca.seed = call_seed(options_.seed, trace.saddle_iter, t);
    state = sdca_optimize(svm, choice.bias, sdca, std::move(state), inner);
    result.sdca_epochs += state.epochs;
    state.epochs = 0;

    const BiasCut cut{choice.bias, state.dual, svm.bias_slope(state.xi),
                      state.primal};
    store.add(cut);
    if (cut.upper < best_upper) {
      best_upper = cut.upper;
      result.classifier = {state.weights, choice.bias};
    }
    result.bias_iterations = t;

    row.eps = choice.eps;
    row.point = format_double(choice.bias);
    row.value = cut.upper;
    row.extra = cut.lower;
    row.chooser = chooser_name;
    trace.add(std::move(row));
  }
  result.upper = best_upper;
  warm_ = std::move(state);
  return result;
}

SvmResult svm_optimize(const ConvexSubproblem& sub, std::span<const double> v,
                       double upper_hint, double eps,
                       const SvmOptions& options, const TraceContext& trace) {
  SvmSolver solver(sub, options);
  return solver.solve(v, upper_hint, eps, trace);
}

}  // namespace ratecon
