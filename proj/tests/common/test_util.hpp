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

#ifndef RATECON_TESTS_COMMON_TEST_UTIL_HPP_
#define RATECON_TESTS_COMMON_TEST_UTIL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ratecon/classifier.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/majorization.hpp"
#include "ratecon/rate_combination.hpp"

namespace ratecon::testing {

inline SparseVector dense_to_sparse(const std::vector<double>& x) {
  SparseVector out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) out.push_back({static_cast<std::uint32_t>(i), x[i]});
  }
  return out;
}

// Rows of dense points.
inline DatasetPtr make_dataset(const std::string& id, std::size_t dimension,
                               const std::vector<std::vector<double>>& rows) {
  std::vector<SparseVector> examples;
  for (const auto& r : rows) examples.push_back(dense_to_sparse(r));
  return std::make_shared<UnlabeledDataset>(id, dimension, examples);
}

inline DatasetPtr make_1d(const std::string& id,
                          const std::vector<double>& xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return make_dataset(id, 1, rows);
}

inline LabeledExample labeled(const std::vector<double>& x, int label) {
  LabeledExample e;
  e.features = dense_to_sparse(x);
  e.label = label;
  return e;
}

// Brute-force minimum of the ramp objective over (w, b) in [-r, r]^2,
// restricted to points whose ramp violations are all <= 0.
inline double grid_min_1d(const ConstrainedProblem& problem, double radius,
                          double step) {
  double best = std::numeric_limits<double>::infinity();
  const int k = static_cast<int>(std::lround(radius / step));
  for (int i = -k; i <= k; ++i) {
    for (int j = -k; j <= k; ++j) {
      const LinearClassifier c{{i * step}, j * step};
      if (problem.num_constraints() > 0 &&
          max_violation(ramp_violations(problem, c)) > 0.0) {
        continue;
      }
      best = std::min(best, ramp_objective(problem, c));
    }
  }
  return best;
}

// Minimum of a convex f(w, b) by a 41 x 41 grid around the best point so
// far, shrinking the box fourfold per level.
template <typename F>
double convex_grid_min_2d(const F& f, double radius, int levels = 12) {
  double cw = 0.0, cb = 0.0;
  double best = f(cw, cb);
  for (int level = 0; level < levels; ++level) {
    const double step = radius / 20.0;
    const double w0 = cw, b0 = cb;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const double v = f(w0 + i * step, b0 + j * step);
        if (v < best) best = v, cw = w0 + i * step, cb = b0 + j * step;
      }
    }
    radius /= 4.0;
  }
  return best;
}

}  // namespace ratecon::testing

#endif  // RATECON_TESTS_COMMON_TEST_UTIL_HPP_
