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

#ifndef RATECON_CUTTING_PLANE_HPP_
#define RATECON_CUTTING_PLANE_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ratecon/piecewise.hpp"

namespace ratecon {

// Lagrange multipliers, one per constraint, inside [0, V]^m.
using MultiplierVector = std::vector<double>;

// Affine over-estimate of the dual function taken at `point`.
struct Cut {
  MultiplierVector point;
  double value = 0.0;  // u
  std::vector<double> gradient;
  double lower = 0.0;  // l
};

// Cuts over the multiplier box. Cut 0 is the flat initial cut at value u0
// with lower bound l0; it carries no classifier.
class CutStore {
 public:
  CutStore(std::size_t dimension, double cap, double l0, double u0);

  // Throws ConfigError if the point leaves the box or sizes disagree.
  void add(Cut cut);

  const std::vector<Cut>& cuts() const { return cuts_; }
  std::size_t dimension() const { return dimension_; }
  double cap() const { return cap_; }

  // h(v) = min_s u_s + <g_s, v - v_s>
  double envelope(std::span<const double> v) const;
  // L = max_s l_s
  double lower_bound() const;

  // Only for dimension 1.
  Polyline envelope_1d() const;

 private:
  std::size_t dimension_;
  double cap_;
  std::vector<Cut> cuts_;
};

struct EnvelopeMax {
  double value = 0.0;
  MultiplierVector argmax;
};

// Exact max of the envelope over the box, by linear programming.
EnvelopeMax envelope_max(const CutStore& store);

struct CutChoice {
  MultiplierVector point;
  double eps = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  // Centroid height and area of the region above L. Unset (NaN) for the
  // maximization chooser.
  double centroid_value = std::numeric_limits<double>::quiet_NaN();
  double area = std::numeric_limits<double>::quiet_NaN();
};

// argmax h, eps = (U - L) / 2.
CutChoice cut_chooser_max(const CutStore& store);

// Centroid (v, z) of {L <= z <= h(v), 0 <= v <= V}, eps = (z - L) / 2.
// Throws ConfigError unless the store is one-dimensional.
CutChoice cut_chooser_centroid_1d(const CutStore& store);

// Area of {L <= z <= h(v)} for a one-dimensional store.
double hypograph_area_1d(const CutStore& store);

// Affine under-estimate of the bias value function taken at `bias`, plus the
// objective value u' of the classifier that produced it.
struct BiasCut {
  double bias = 0.0;
  double lower = 0.0;
  double slope = 0.0;
  double upper = 0.0;
};

// Cuts over the bias interval [lo, hi]. Cut 0 is the flat cut at l'0 with
// upper value u'0.
class BiasCutStore {
 public:
  BiasCutStore(double lo, double hi, double l0, double u0);

  void add(const BiasCut& cut);

  const std::vector<BiasCut>& cuts() const { return cuts_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // h'(b) = max_s l'_s + g'_s (b - b_s)
  Polyline envelope() const;
  // L' = min over the interval of h'.
  double lower_bound() const;
  // U' = min_s u'_s
  double upper_bound() const;

 private:
  double lo_;
  double hi_;
  std::vector<BiasCut> cuts_;
};

struct BiasChoice {
  double bias = 0.0;
  double eps = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double centroid_value = std::numeric_limits<double>::quiet_NaN();
  double area = std::numeric_limits<double>::quiet_NaN();
};

// Midpoint of argmin h', eps' = (U' - L') / 2.
BiasChoice bias_cut_chooser_min(const BiasCutStore& store);

// Centroid (b, z) of {h'(b) <= z <= U'}, eps' = (U' - z) / 2. A region of
// zero area yields the interval midpoint and eps' = fallback_eps / 2.
BiasChoice bias_cut_chooser_centroid(const BiasCutStore& store,
                                     double fallback_eps);

}  // namespace ratecon

#endif  // RATECON_CUTTING_PLANE_HPP_
