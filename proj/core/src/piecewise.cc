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

#include "ratecon/piecewise.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>

#include "ratecon/errors.hpp"

namespace ratecon {

double Polyline::operator()(double at) const {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  const double x0 = x[k - 1], x1 = x[k];
  if (x1 == x0) return y[k];
  const double t = (at - x0) / (x1 - x0);
  return y[k - 1] + t * (y[k] - y[k - 1]);
}

double Polyline::min_value() const {
  return *std::min_element(y.begin(), y.end());
}

double Polyline::max_value() const {
  return *std::max_element(y.begin(), y.end());
}

Polyline lower_envelope(std::span<const Line> lines, double lo, double hi) {
  if (lines.empty()) throw ConfigError("envelope of no lines");
  if (!(lo <= hi)) throw ConfigError("envelope interval is empty");

  // Lowest at lo; ties go to the smaller slope, which stays lower.
  std::size_t current = 0;
  for (std::size_t j = 1; j < lines.size(); ++j) {
    const double vj = lines[j](lo), vc = lines[current](lo);
    if (vj < vc || (vj == vc && lines[j].slope < lines[current].slope)) {
      current = j;
    }
  }
  Polyline out;
  out.x.push_back(lo);
  out.y.push_back(lines[current](lo));
  if (lo == hi) return out;

  double x = lo;
  while (true) {
    std::optional<std::size_t> next;
    double next_x = hi;
    const double vc = lines[current](x);
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (!(lines[j].slope < lines[current].slope)) continue;
      const double gap = std::max(0.0, lines[j](x) - vc);
      const double cross =
          x + gap / (lines[current].slope - lines[j].slope);
      if (cross < next_x ||
          (next && cross == next_x && lines[j].slope < lines[*next].slope)) {
        next_x = cross;
        next = j;
      }
    }
    if (!next || next_x >= hi) {
      out.x.push_back(hi);
      out.y.push_back(lines[current](hi));
      break;
    }
    if (next_x > x) {
      out.x.push_back(next_x);
      out.y.push_back(lines[current](next_x));
      x = next_x;
    }
    current = *next;
  }
  return out;
}

Polyline upper_envelope(std::span<const Line> lines, double lo, double hi) {
  std::vector<Line> negated(lines.begin(), lines.end());
  for (Line& l : negated) {
    l.y0 = -l.y0;
    l.slope = -l.slope;
  }
  Polyline out = lower_envelope(negated, lo, hi);
  for (double& y : out.y) y = -y;
  return out;
}

namespace {

// Accumulates the moments of {0 <= h <= t(x)} where t is linear on [a, b]
// with endpoint values ta, tb that may have either sign.
void accumulate(double a, double b, double ta, double tb, RegionMoments& m) {
  if (ta <= 0.0 && tb <= 0.0) return;
  if (ta < 0.0) {
    a = a + (b - a) * (-ta) / (tb - ta);
    ta = 0.0;
  } else if (tb < 0.0) {
    b = a + (b - a) * ta / (ta - tb);
    tb = 0.0;
  }
  const double w = b - a;
  if (!(w > 0.0)) return;
  m.area += w * (ta + tb) / 2.0;
  m.x_moment += w / 6.0 * (ta * (2.0 * a + b) + tb * (a + 2.0 * b));
  m.height_moment += w * (ta * ta + ta * tb + tb * tb) / 6.0;
}

RegionMoments moments(const Polyline& curve, double level, double sign) {
  RegionMoments m;
  for (std::size_t k = 0; k + 1 < curve.x.size(); ++k) {
    accumulate(curve.x[k], curve.x[k + 1], sign * (curve.y[k] - level),
               sign * (curve.y[k + 1] - level), m);
  }
  return m;
}

}  // namespace

RegionMoments moments_above_level(const Polyline& curve, double level) {
  return moments(curve, level, 1.0);
}

RegionMoments moments_below_level(const Polyline& curve, double level) {
  return moments(curve, level, -1.0);
}

}  // namespace ratecon
