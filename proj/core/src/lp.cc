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

#include "ratecon/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratecon/errors.hpp"

namespace ratecon {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;

}  // namespace

LpSolution maximize_lp(const std::vector<std::vector<double>>& a,
                       std::span<const double> b, std::span<const double> c,
                       std::size_t max_pivots) {
  const std::size_t rows = a.size();
  const std::size_t vars = c.size();
  if (b.size() != rows) throw ConfigError("lp: row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != vars) throw ConfigError("lp: column count mismatch");
    if (!(b[i] >= 0.0)) throw ConfigError("lp: right-hand side must be >= 0");
  }

  // Columns: structural, then slacks, then the right-hand side.
  const std::size_t cols = vars + rows + 1;
  std::vector<double> t(rows * cols, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return t[i * cols + j];
  };
  std::vector<double> cost(cols, 0.0);  // reduced costs, rhs = -objective
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) at(i, j) = a[i][j];
    at(i, vars + i) = 1.0;
    at(i, cols - 1) = b[i];
    basis[i] = vars + i;
  }
  for (std::size_t j = 0; j < vars; ++j) cost[j] = c[j];

  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));

  LpSolution out;
  while (true) {
    // Bland: lowest-index improving column.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (cost[j] > kCostTol * scale) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double aij = at(i, enter);
      if (aij <= kPivotTol) continue;
      const double ratio = at(i, cols - 1) / aij;
      if (ratio < best_ratio ||
          (ratio == best_ratio && leave < rows && basis[i] < basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == rows) throw SolverError("lp: objective is unbounded");
    if (++out.pivots > max_pivots) {
      throw SolverError("lp: pivot cap of " + std::to_string(max_pivots) +
                        " reached");
    }

    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= pivot;
    at(leave, enter) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) at(i, j) -= f * at(leave, j);
      at(i, enter) = 0.0;
      if (at(i, cols - 1) < 0.0) at(i, cols - 1) = 0.0;
    }
    const double f = cost[enter];
    for (std::size_t j = 0; j < cols; ++j) cost[j] -= f * at(leave, j);
    cost[enter] = 0.0;
    basis[leave] = enter;
  }

  out.x.assign(vars, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) out.x[basis[i]] = at(i, cols - 1);
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < vars; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace ratecon
