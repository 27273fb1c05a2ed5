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

#include "ratecon/cutting_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratecon/errors.hpp"
#include "ratecon/lp.hpp"

namespace ratecon {

CutStore::CutStore(std::size_t dimension, double cap, double l0, double u0)
    : dimension_(dimension), cap_(cap) {
  if (!(cap > 0.0)) throw ConfigError("multiplier cap must be positive");
  if (!std::isfinite(l0) || !std::isfinite(u0)) {
    throw SolverError("initial multiplier bounds must be finite");
  }
  Cut initial;
  initial.point.assign(dimension, 0.0);
  initial.value = u0;
  initial.gradient.assign(dimension, 0.0);
  initial.lower = l0;
  cuts_.push_back(std::move(initial));
}

void CutStore::add(Cut cut) {
  if (cut.point.size() != dimension_ || cut.gradient.size() != dimension_) {
    throw ConfigError("cut dimension mismatch");
  }
  for (double v : cut.point) {
    if (v < 0.0 || v > cap_) throw ConfigError("cut point outside the box");
  }
  cuts_.push_back(std::move(cut));
}

double CutStore::envelope(std::span<const double> v) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Cut& c : cuts_) {
    double value = c.value;
    for (std::size_t j = 0; j < dimension_; ++j) {
      value += c.gradient[j] * (v[j] - c.point[j]);
    }
    best = std::min(best, value);
  }
  return best;
}

double CutStore::lower_bound() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Cut& c : cuts_) best = std::max(best, c.lower);
  return best;
}

Polyline CutStore::envelope_1d() const {
  if (dimension_ != 1) throw ConfigError("envelope_1d needs one multiplier");
  std::vector<Line> lines;
  lines.reserve(cuts_.size());
  for (const Cut& c : cuts_) {
    lines.push_back({c.point[0], c.value, c.gradient[0]});
  }
  return lower_envelope(lines, 0.0, cap_);
}

EnvelopeMax envelope_max(const CutStore& store) {
  const std::size_t m = store.dimension();
  const auto& cuts = store.cuts();

  // Variables (v_1..v_m, y) with z = base + y; base is the lowest cut
  // value at the origin, so the origin is feasible.
  std::vector<double> at_origin(cuts.size());
  for (std::size_t s = 0; s < cuts.size(); ++s) {
    double value = cuts[s].value;
    for (std::size_t j = 0; j < m; ++j) {
      value -= cuts[s].gradient[j] * cuts[s].point[j];
    }
    at_origin[s] = value;
  }
  const double base = *std::min_element(at_origin.begin(), at_origin.end());

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t s = 0; s < cuts.size(); ++s) {
    std::vector<double> row(m + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[j] = -cuts[s].gradient[j];
    row[m] = 1.0;
    a.push_back(std::move(row));
    b.push_back(std::max(0.0, at_origin[s] - base));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(m + 1, 0.0);
    row[j] = 1.0;
    a.push_back(std::move(row));
    b.push_back(store.cap());
  }
  std::vector<double> c(m + 1, 0.0);
  c[m] = 1.0;
  const LpSolution lp = maximize_lp(a, b, c);

  EnvelopeMax out;
  out.argmax.assign(lp.x.begin(), lp.x.begin() + static_cast<long>(m));
  for (double& v : out.argmax) v = std::clamp(v, 0.0, store.cap());
  out.value = store.envelope(out.argmax);
  return out;
}

CutChoice cut_chooser_max(const CutStore& store) {
  const EnvelopeMax em = envelope_max(store);
  CutChoice out;
  out.point = em.argmax;
  out.upper = em.value;
  out.lower = store.lower_bound();
  out.eps = (out.upper - out.lower) / 2.0;
  return out;
}

CutChoice cut_chooser_centroid_1d(const CutStore& store) {
  if (store.dimension() != 1) {
    throw ConfigError(
        "the centroid cut chooser supports exactly one constraint");
  }
  const Polyline h = store.envelope_1d();
  CutChoice out;
  out.lower = store.lower_bound();
  out.upper = h.max_value();
  const RegionMoments m = moments_above_level(h, out.lower);
  out.area = m.area;
  if (!(m.area > 0.0)) {
    const auto it = std::max_element(h.y.begin(), h.y.end());
    out.point = {h.x[static_cast<std::size_t>(it - h.y.begin())]};
    out.centroid_value = out.lower;
    out.eps = (out.upper - out.lower) / 2.0;
    return out;
  }
  out.point = {std::clamp(m.centroid_x(), 0.0, store.cap())};
  out.centroid_value = out.lower + m.centroid_height();
  out.eps = m.centroid_height() / 2.0;
  return out;
}

double hypograph_area_1d(const CutStore& store) {
  return moments_above_level(store.envelope_1d(), store.lower_bound()).area;
}

BiasCutStore::BiasCutStore(double lo, double hi, double l0, double u0)
    : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw ConfigError("bias interval is empty");
  cuts_.push_back({0.5 * (lo + hi), l0, 0.0, u0});
}

void BiasCutStore::add(const BiasCut& cut) { cuts_.push_back(cut); }

Polyline BiasCutStore::envelope() const {
  std::vector<Line> lines;
  lines.reserve(cuts_.size());
  for (const BiasCut& c : cuts_) lines.push_back({c.bias, c.lower, c.slope});
  return upper_envelope(lines, lo_, hi_);
}

double BiasCutStore::lower_bound() const { return envelope().min_value(); }

double BiasCutStore::upper_bound() const {
  double best = std::numeric_limits<double>::infinity();
  for (const BiasCut& c : cuts_) best = std::min(best, c.upper);
  return best;
}

BiasChoice bias_cut_chooser_min(const BiasCutStore& store) {
  const Polyline h = store.envelope();
  BiasChoice out;
  out.lower = h.min_value();
  out.upper = store.upper_bound();
  const double tol = 1e-12 * (1.0 + std::abs(out.lower));
  std::size_t first = h.x.size(), last = 0;
  for (std::size_t k = 0; k < h.x.size(); ++k) {
    if (h.y[k] <= out.lower + tol) {
      first = std::min(first, k);
      last = k;
    }
  }
  out.bias = 0.5 * (h.x[first] + h.x[last]);
  out.eps = (out.upper - out.lower) / 2.0;
  return out;
}

BiasChoice bias_cut_chooser_centroid(const BiasCutStore& store,
                                     double fallback_eps) {
  const Polyline h = store.envelope();
  BiasChoice out;
  out.lower = h.min_value();
  out.upper = store.upper_bound();
  const RegionMoments m = moments_below_level(h, out.upper);
  out.area = m.area;
  if (!(m.area > 0.0)) {
    out.bias = 0.5 * (store.lo() + store.hi());
    out.centroid_value = out.upper;
    out.eps = fallback_eps / 2.0;
    return out;
  }
  out.bias = std::clamp(m.centroid_x(), store.lo(), store.hi());
  out.centroid_value = out.upper - m.centroid_height();
  out.eps = m.centroid_height() / 2.0;
  return out;
}

}  // namespace ratecon
