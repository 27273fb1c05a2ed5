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

#ifndef RATECON_TRACE_HPP_
#define RATECON_TRACE_HPP_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ratecon {

enum class TraceLevel { kMm, kSaddle, kBias, kSdca };

std::string_view level_name(TraceLevel level);
std::optional<TraceLevel> parse_level(std::string_view name);

// One solver event. Column meaning by level:
//
//   mm      value = ramp objective, extra = max ramp violation,
//           lower/upper = saddle bounds of the subproblem just solved
//   saddle  lower/upper = L, U; eps; point = v; value = u, extra = l of the
//           cut taken at v; area = hypograph area (centroid chooser)
//   bias    lower/upper = L', U'; eps'; point = b; value = u', extra = l';
//           area = sublevel area (centroid chooser)
//   sdca    lower/upper = dual, primal; eps = target gap; value = gap;
//           extra = iteration-bound estimate on the last check of a call
//
// A row with chooser "stop" closes a loop that met its tolerance.
struct TraceRow {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  TraceLevel level = TraceLevel::kMm;
  std::size_t mm_iter = 0;
  std::size_t saddle_iter = 0;
  std::size_t bias_iter = 0;
  std::size_t epoch = 0;
  double lower = kUnset;
  double upper = kUnset;
  double eps = kUnset;
  std::string point;
  double value = kUnset;
  double extra = kUnset;
  double area = kUnset;
  std::string chooser;
  std::size_t constraints = 0;
};

class SolverTrace {
 public:
  void add(TraceRow row) { rows_.push_back(std::move(row)); }
  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t count(TraceLevel level) const;

  // Header line plus one row per event, LF endings, shortest round-trip
  // decimal formatting; unset numbers are empty fields.
  void write_csv(std::ostream& out) const;
  // Throws ParseError on schema mismatch.
  static SolverTrace read_csv(std::istream& in);

  static const std::vector<std::string>& columns();

 private:
  std::vector<TraceRow> rows_;
};

// Where a nested solver writes its rows. A null trace records nothing.
struct TraceContext {
  SolverTrace* trace = nullptr;
  std::size_t mm_iter = 0;
  std::size_t saddle_iter = 0;
  std::size_t bias_iter = 0;
  std::size_t constraints = 0;

  TraceRow row(TraceLevel level) const {
    TraceRow r;
    r.level = level;
    r.mm_iter = mm_iter;
    r.saddle_iter = saddle_iter;
    r.bias_iter = bias_iter;
    r.constraints = constraints;
    return r;
  }
  void add(TraceRow r) const {
    if (trace != nullptr) trace->add(std::move(r));
  }
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);
// Throws std::invalid_argument on a malformed number.
double parse_double(std::string_view text);

std::string format_point(const std::vector<double>& v);

}  // namespace ratecon

#endif  // RATECON_TRACE_HPP_
