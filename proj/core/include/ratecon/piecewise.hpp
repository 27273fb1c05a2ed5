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

#ifndef RATECON_PIECEWISE_HPP_
#define RATECON_PIECEWISE_HPP_

#include <span>
#include <vector>

namespace ratecon {

// y0 + slope * (x - x0)
struct Line {
  double x0 = 0.0;
  double y0 = 0.0;
  double slope = 0.0;

  double operator()(double x) const { return y0 + slope * (x - x0); }
};

// Continuous piecewise-linear function given by its breakpoints, x sorted
// ascending.
struct Polyline {
  std::vector<double> x;
  std::vector<double> y;

  double operator()(double at) const;
  double min_value() const;
  double max_value() const;
};

// Pointwise min (max) of the lines over [lo, hi]. Needs at least one line.
Polyline lower_envelope(std::span<const Line> lines, double lo, double hi);
Polyline upper_envelope(std::span<const Line> lines, double lo, double hi);

// Area and first moments of the region between a curve and a level line.
// Heights are measured from the level, away from it.
struct RegionMoments {
  double area = 0.0;
  double x_moment = 0.0;
  double height_moment = 0.0;

  double centroid_x() const { return x_moment / area; }
  // Distance of the centroid from the level line.
  double centroid_height() const { return height_moment / area; }
};

// {(x, z) : level <= z <= curve(x)}
RegionMoments moments_above_level(const Polyline& curve, double level);
// {(x, z) : curve(x) <= z <= level}
RegionMoments moments_below_level(const Polyline& curve, double level);

}  // namespace ratecon

#endif  // RATECON_PIECEWISE_HPP_
