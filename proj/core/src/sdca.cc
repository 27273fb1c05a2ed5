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

#include "ratecon/sdca.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ratecon/rates.hpp"

namespace ratecon {

WeightedSvm::WeightedSvm(const ConvexSubproblem& sub,
                         const ExampleCoefficients& coeffs)
    : dimension_(sub.problem().dimension()),
      a_plus_(coeffs.a_plus),
      a_minus_(coeffs.a_minus),
      lambda_(sub.problem().lambda()),
      constant_(coeffs.constant) {
  examples_.reserve(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    examples_.push_back(sub.example(i));
  }
  validate();
}

WeightedSvm::WeightedSvm(std::vector<std::span<const Feature>> examples,
                         std::size_t dimension, std::vector<double> a_plus,
                         std::vector<double> a_minus, double lambda,
                         double constant)
    : examples_(std::move(examples)),
      dimension_(dimension),
      a_plus_(std::move(a_plus)),
      a_minus_(std::move(a_minus)),
      lambda_(lambda),
      constant_(constant) {
  validate();
}

void WeightedSvm::validate() {
  if (examples_.empty()) throw ConfigError("weighted SVM has no examples");
  if (a_plus_.size() != examples_.size() ||
      a_minus_.size() != examples_.size()) {
    throw ConfigError("weighted SVM coefficient count mismatch");
  }
  if (!(lambda_ > 0.0)) throw ConfigError("lambda must be positive");
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    if (!(a_plus_[i] >= 0.0) || !(a_minus_[i] >= 0.0)) {
      throw ConfigError("weighted SVM coefficients must be nonnegative");
    }
  }
  squared_norms_.resize(examples_.size());
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    squared_norms_[i] = ratecon::squared_norm(examples_[i]);
  }
}

double WeightedSvm::max_norm() const {
  return std::sqrt(*std::max_element(squared_norms_.begin(),
                                     squared_norms_.end()));
}

double WeightedSvm::max_coefficient() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    best = std::max(best, a_plus_[i] + a_minus_[i]);
  }
  return best;
}

double WeightedSvm::primal(std::span<const double> weights,
                           double bias) const {
  const double loss = pairwise_sum(0, size(), [&](std::size_t i) {
    return per_example_loss(dot(weights, examples_[i]) - bias, a_plus_[i],
                            a_minus_[i]);
  });
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  return loss / static_cast<double>(size()) + 0.5 * lambda_ * norm + constant_;
}

double WeightedSvm::dual(std::span<const double> xi,
                         std::span<const double> weights, double bias) const {
  const double conj = pairwise_sum(0, size(), [&](std::size_t i) {
    const double x = std::clamp(xi[i], -a_minus_[i], a_plus_[i]);
    return per_example_conjugate(x, a_plus_[i], a_minus_[i]) + x * bias;
  });
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  return -conj / static_cast<double>(size()) - 0.5 * lambda_ * norm +
         constant_;
}

std::vector<double> WeightedSvm::weights_from_dual(
    std::span<const double> xi) const {
  std::vector<double> w(dimension_, 0.0);
  const double scale = -1.0 / (lambda_ * static_cast<double>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    if (xi[i] != 0.0) axpy(scale * xi[i], examples_[i], w);
  }
  return w;
}

double WeightedSvm::bias_slope(std::span<const double> xi) const {
  return -pairwise_sum(xi) / static_cast<double>(size());
}

DualState zero_state(const WeightedSvm& svm) {
  DualState s;
  s.xi.assign(svm.size(), 0.0);
  s.weights.assign(svm.dimension(), 0.0);
  return s;
}

DualState clamp_state(const WeightedSvm& svm, DualState state) {
  if (state.xi.size() != svm.size()) return zero_state(svm);
  for (std::size_t i = 0; i < svm.size(); ++i) {
    state.xi[i] = std::clamp(state.xi[i], -svm.a_minus(i), svm.a_plus(i));
  }
  state.weights = svm.weights_from_dual(state.xi);
  state.epochs = 0;
  return state;
}

double sdca_coordinate_step(double xi, double z, double q, double a_plus,
                            double a_minus) {
  const double kink = a_plus - a_minus;
  double next;
  if (q > 0.0) {
    const double above = xi + (z - 0.5) / q;
    const double below = xi + (z + 0.5) / q;
    if (above > kink) {
      next = above;
    } else if (below < kink) {
      next = below;
    } else {
      next = kink;
    }
  } else if (z > 0.5) {
    next = a_plus;
  } else if (z < -0.5) {
    next = -a_minus;
  } else {
    next = kink;
  }
  return std::clamp(next, -a_minus, a_plus);
}

namespace {

void evaluate(const WeightedSvm& svm, double bias, DualState& state) {
  state.primal = svm.primal(state.weights, bias);
  state.dual = svm.dual(state.xi, state.weights, bias);
  const double tol =
      1e-10 * (1.0 + std::abs(state.primal) + std::abs(state.dual));
  if (state.dual > state.primal + tol) {
    throw SdcaError("weak duality violated: primal " +
                        format_double(state.primal) + " < dual " +
                        format_double(state.dual),
                    state);
  }
  // Rounding only: both values agree to within tol here.
  if (state.dual > state.primal) state.dual = state.primal;
}

}  // namespace

DualState sdca_optimize(const WeightedSvm& svm, double bias,
                        const SdcaOptions& options, DualState state,
                        const TraceContext& trace) {
  if (!(options.gap > 0.0)) throw ConfigError("SDCA gap must be positive");
  if (state.xi.size() != svm.size() ||
      state.weights.size() != svm.dimension()) {
    state = zero_state(svm);
  }
  const std::size_t n = svm.size();
  const double inv_lambda_n = 1.0 / (svm.lambda() * static_cast<double>(n));
  std::mt19937_64 rng(options.seed);

  auto record = [&](bool last) {
    TraceRow row = trace.row(TraceLevel::kSdca);
    row.epoch = state.epochs;
    row.lower = state.dual;
    row.upper = state.primal;
    row.eps = options.gap;
    row.value = state.gap();
    if (last) {
      const double l = svm.max_coefficient();
      const double x = svm.max_norm();
      row.extra = 1.0 + l * l * x * x /
                            (svm.lambda() * options.gap * static_cast<double>(n));
    }
    trace.add(std::move(row));
  };

  evaluate(svm, bias, state);
  std::size_t epochs = 0;
  while (state.gap() > options.gap) {
    if (epochs >= options.max_epochs) {
      record(true);
      throw SdcaError("SDCA reached " + std::to_string(options.max_epochs) +
                          " epochs with gap " + format_double(state.gap()),
                      state);
    }
    record(false);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t i = static_cast<std::size_t>(rng() % n);
      const auto x = svm.example(i);
      const double z = dot(state.weights, x) - bias;
      const double next = sdca_coordinate_step(
          state.xi[i], z, svm.squared_norm(i) * inv_lambda_n, svm.a_plus(i),
          svm.a_minus(i));
      const double delta = next - state.xi[i];
      if (delta != 0.0) {
        state.xi[i] = next;
        axpy(-delta * inv_lambda_n, x, state.weights);
      }
    }
    ++epochs;
    ++state.epochs;
    evaluate(svm, bias, state);
  }
  record(true);
  return state;
}

}  // namespace ratecon
