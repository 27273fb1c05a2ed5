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

#include "ratecon/saddle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "ratecon/lp.hpp"

namespace ratecon {

namespace {

constexpr std::array<std::pair<CutChooserKind, std::string_view>, 2>
    kChoosers = {{
        {CutChooserKind::kMaximization, "max"},
        {CutChooserKind::kCentroid, "centroid"},
    }};

struct Candidate {
  LinearClassifier classifier;
  double objective = 0.0;
  std::vector<double> constraints;
};

double dot_values(std::span<const double> v, std::span<const double> g) {
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) sum += v[j] * g[j];
  return sum;
}

bool dominates_anchor(const ConvexSubproblem& sub, const Candidate& anchor,
                      const LinearClassifier& c) {
  const double scale = 1.0 + std::abs(anchor.objective);
  if (sub.bound_objective(c) > anchor.objective + 1e-12 * scale) return false;
  const std::vector<double> g = sub.bound_constraint_values(c);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] > std::max(anchor.constraints[j], 0.0) + 1e-12 * scale) {
      return false;
    }
  }
  return true;
}

// Best convex combination of the anchor and the candidates under the
// constraint-wise upper estimates sum mu g + (1 - sum mu) g_anchor <=
// max(g_anchor, 0).
LinearClassifier recover(const ConvexSubproblem& sub, const Candidate& anchor,
                         const std::vector<Candidate>& pool) {
  const std::size_t m = anchor.constraints.size();
  const std::size_t p = pool.size();
  if (p == 0) return anchor.classifier;
  std::vector<std::vector<double>> a(m + 1, std::vector<double>(p, 0.0));
  std::vector<double> b(m + 1, 0.0);
  std::vector<double> c(p, 0.0);
  for (std::size_t s = 0; s < p; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      a[j][s] = pool[s].constraints[j] - anchor.constraints[j];
    }
    a[m][s] = 1.0;
    c[s] = anchor.objective - pool[s].objective;
  }
  for (std::size_t j = 0; j < m; ++j) {
    b[j] = std::max(0.0, -anchor.constraints[j]);
  }
  b[m] = 1.0;
  const LpSolution lp = maximize_lp(a, b, c);

  double total = 0.0;
  for (double mu : lp.x) total += mu;
  const double keep = std::max(0.0, 1.0 - total);
  LinearClassifier mix = anchor.classifier;
  for (double& w : mix.weights) w *= keep;
  mix.bias *= keep;
  for (std::size_t s = 0; s < p; ++s) {
    if (lp.x[s] == 0.0) continue;
    for (std::size_t i = 0; i < mix.weights.size(); ++i) {
      mix.weights[i] += lp.x[s] * pool[s].classifier.weights[i];
    }
    mix.bias += lp.x[s] * pool[s].classifier.bias;
  }
  if (dominates_anchor(sub, anchor, mix)) return mix;

  // Rounding in the LP can spoil the certificate; fall back to the best
  // single candidate that is safe, then to the anchor.
  const Candidate* best = nullptr;
  for (const Candidate& cand : pool) {
    if (!dominates_anchor(sub, anchor, cand.classifier)) continue;
    if (best == nullptr || cand.objective < best->objective) best = &cand;
  }
  return best != nullptr ? best->classifier : anchor.classifier;
}

}  // namespace

std::optional<CutChooserKind> parse_cut_chooser(std::string_view name) {
  for (const auto& [kind, text] : kChoosers) {
    if (text == name) return kind;
  }
  return std::nullopt;
}

std::string_view cut_chooser_name(CutChooserKind kind) {
  for (const auto& [k, text] : kChoosers) {
    if (k == kind) return text;
  }
  return "unknown";
}

double dual_psi(const LinearClassifier& classifier, std::span<const double> v,
                const ConvexSubproblem& sub) {
  if (v.size() != sub.num_constraints()) {
    throw ConfigError("multiplier count mismatch");
  }
  return sub.bound_objective(classifier) +
         dot_values(v, sub.bound_constraint_values(classifier));
}

SaddleResult solve_saddle(const ConvexSubproblem& sub, double eps,
                          const SaddleOptions& options,
                          const TraceContext& trace) {
  if (!(eps > 0.0)) throw ConfigError("saddle tolerance must be positive");
  const std::size_t m = sub.num_constraints();
  const double cap = sub.problem().multiplier_cap();
  if (options.chooser == CutChooserKind::kCentroid && m != 1) {
    throw ConfigError(
        "the centroid cut chooser supports exactly one constraint");
  }

  SvmSolver svm(sub, options.svm);
  Candidate anchor{sub.anchor(), sub.bound_objective(sub.anchor()),
                   sub.bound_constraint_values(sub.anchor())};
  TraceContext ctx = trace;
  ctx.constraints = m;
  ctx.saddle_iter = 0;
  ctx.bias_iter = 0;

  SaddleResult result;
  if (m == 0) {
    const SvmResult r = svm.solve({}, anchor.objective, eps, ctx);
    result.classifier = r.classifier;
    result.recovered = dominates_anchor(sub, anchor, r.classifier)
                           ? r.classifier
                           : anchor.classifier;
    result.lower = r.lower;
    result.upper = r.upper;
    return result;
  }

  double penalty = 0.0;
  for (double g : anchor.constraints) penalty += std::max(0.0, g);
  const double u0 = anchor.objective + cap * penalty;
  const std::vector<double> origin(m, 0.0);
  const SvmResult initial = svm.solve(origin, u0, eps, ctx);
  CutStore store(m, cap, initial.lower, u0);

  std::vector<Candidate> pool;
  pool.push_back({initial.classifier, sub.bound_objective(initial.classifier),
                  sub.bound_constraint_values(initial.classifier)});
  std::vector<MultiplierVector> points;
  std::size_t best = 0;
  const std::string_view chooser = cut_chooser_name(options.chooser);

  for (std::size_t t = 1;; ++t) {
    const CutChoice choice = options.chooser == CutChooserKind::kCentroid
                                 ? cut_chooser_centroid_1d(store)
                                 : cut_chooser_max(store);
    TraceRow row = ctx.row(TraceLevel::kSaddle);
    row.saddle_iter = t;
    row.lower = choice.lower;
    row.upper = choice.upper;
    row.area = choice.area;
    if (t > 1 && choice.upper - choice.lower <= eps) {
      row.chooser = "stop";
      ctx.add(std::move(row));
      result.lower = choice.lower;
      result.upper = choice.upper;
      break;
    }
    if (t > options.max_iterations) {
      result.lower = choice.lower;
      result.upper = choice.upper;
      result.iterations = points.size();
      result.recovered = recover(sub, anchor, pool);
      throw SaddleError("multiplier search reached " +
                            std::to_string(options.max_iterations) +
                            " iterations with gap " +
                            format_double(choice.upper - choice.lower),
                        std::move(result));
    }

    TraceContext inner = ctx;
    inner.saddle_iter = t;
    const double upper_hint = store.envelope(choice.point);
    // The first iteration is forced, and its eps can be ~0 when the anchor
    // is already optimal.
    const SvmResult r = svm.solve(choice.point, upper_hint,
                                  std::max(choice.eps, eps / 4.0), inner);
    Candidate cand{r.classifier, sub.bound_objective(r.classifier),
                   sub.bound_constraint_values(r.classifier)};
    Cut cut;
    cut.point = choice.point;
    cut.gradient = cand.constraints;
    cut.value = cand.objective + dot_values(choice.point, cand.constraints);
    cut.lower = r.lower;
    store.add(cut);

    row.eps = choice.eps;
    row.point = format_point(choice.point);
    row.value = cut.value;
    row.extra = cut.lower;
    row.chooser = std::string(chooser);
    ctx.add(std::move(row));

    for (double v : choice.point) {
      if (v >= cap * (1.0 - 1e-9)) result.multiplier_cap_hit = true;
    }
    // Largest lower bound; lowest index wins ties.
    if (best == 0 || cut.lower > store.cuts()[best].lower) {
      result.classifier = cand.classifier;
      result.multipliers = choice.point;
      best = t;
    }
    points.push_back(choice.point);
    pool.push_back(std::move(cand));
  }

  result.iterations = points.size();
  result.lower_anomaly = store.cuts()[0].lower > store.cuts()[best].lower;
  if (result.lower_anomaly) {
    result.warnings.push_back(
        "initial lower bound exceeds every iterate's lower bound");
  }
  if (result.multiplier_cap_hit) {
    result.warnings.push_back(
        "a multiplier reached the cap; the constraint may be infeasible or "
        "nearly so");
  }
  result.recovered = recover(sub, anchor, pool);
  return result;
}

}  // namespace ratecon
