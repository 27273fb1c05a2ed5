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

#ifndef RATECON_LP_HPP_
#define RATECON_LP_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace ratecon {

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

// Dense tableau simplex with Bland's rule for
//
//   maximize c.x  subject to  A x <= b,  x >= 0,
//
// where b >= 0 so the origin is a feasible start. Rows of `a` all have
// length c.size(). Throws SolverError if the problem is unbounded or the
// pivot cap is hit, ConfigError on malformed input.
LpSolution maximize_lp(const std::vector<std::vector<double>>& a,
                       std::span<const double> b, std::span<const double> c,
                       std::size_t max_pivots = 200000);

}  // namespace ratecon

#endif  // RATECON_LP_HPP_
