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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion on
// stdout and progress on stderr. Exit status 0 iff every selected criterion
// passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "CLI11.hpp"
#include "ratecon/analysis.hpp"
#include "ratecon/config.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/experiments.hpp"
#include "ratecon/majorization.hpp"
#include "ratecon/metrics.hpp"
#include "ratecon/random.hpp"
#include "ratecon/rates.hpp"
#include "ratecon/runner.hpp"
#include "ratecon/saddle.hpp"
#include "ratecon/sdca.hpp"
#include "ratecon/subproblem.hpp"
#include "test_util.hpp"

namespace ratecon::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
  void fail(const std::string& text) {
    pass = false;
    note(text);
  }
};

struct AuditedRun {
  std::string label;
  SolverTrace trace;
};

struct Shared {
  fs::path work;
  std::vector<AuditedRun> traces;
  // Audit notes and warnings reported by the experiment drivers.
  std::vector<std::string> experiment_notes;
  std::optional<AdultSummary> adult;
  double adult_seconds = 0.0;
};

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string libsvm_line(int label, const std::vector<double>& x) {
  std::ostringstream out;
  out.precision(17);
  out << (label > 0 ? "+1" : "-1");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) out << ' ' << i + 1 << ':' << x[i];
  }
  return out.str();
}

// Reference formulas, written out directly from the definitions.
namespace oracle {

double ramp(double z) { return std::clamp(0.5 + z, 0.0, 1.0); }

// Upper bound on ramp(z) built at anchor score z0.
double hinge_positive(double z, double z0) {
  return z0 <= 0.5 ? std::max(0.0, 0.5 + z) : 1.0;
}
// Upper bound on ramp(-z) built at anchor score z0.
double hinge_negative(double z, double z0) {
  return z0 >= -0.5 ? std::max(0.0, 0.5 - z) : 1.0;
}

double score(const std::vector<double>& x, const std::vector<double>& w,
             double b) {
  double s = -b;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
  return s;
}

double squared_norm(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

// (1/n) sum ramp(-y (w x - b)) + lambda/2 w^2 on 1-d labeled points.
double ramp_error_1d(const std::vector<double>& xs, const std::vector<int>& ys,
                     double lambda, double w, double b) {
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    loss += ramp(-ys[i] * (w * xs[i] - b));
  }
  return loss / static_cast<double>(xs.size()) + 0.5 * lambda * w * w;
}

struct DenseSet {
  std::string id;
  std::vector<std::vector<double>> rows;
};

struct Term {
  std::size_t set = 0;
  Polarity polarity = Polarity::kPositive;
  double coefficient = 0.0;
};

double rate(const DenseSet& set, Polarity polarity,
            const std::vector<double>& w, double b) {
  double sum = 0.0;
  for (const auto& x : set.rows) {
    const double z = score(x, w, b);
    sum += polarity == Polarity::kPositive ? ramp(z) : ramp(-z);
  }
  return sum / static_cast<double>(set.rows.size());
}

double combination(const std::vector<DenseSet>& sets,
                   const std::vector<Term>& terms,
                   const std::vector<double>& w, double b) {
  double sum = 0.0;
  for (const Term& t : terms) {
    sum += t.coefficient * rate(sets[t.set], t.polarity, w, b);
  }
  return sum;
}

// Conjugate of l(z) = a+ (1/2 + z)_+ + a- (1/2 - z)_+ on [-a-, a+].
double loss_conjugate(double s, double a_plus, double a_minus) {
  return s <= a_plus - a_minus ? -0.5 * s - a_minus : 0.5 * s - a_plus;
}

// Minimizes f over [lo, hi], f convex.
template <typename F>
std::pair<double, double> convex_min(const F& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  return boost::math::tools::brent_find_minima(
      f, lo, hi, std::numeric_limits<double>::digits / 2, iters);
}

}  // namespace oracle

// Criterion 1: unconstrained training on tiny 1-d sets against a grid.

Outcome criterion_unconstrained(Shared& shared) {
  Outcome out;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  constexpr double kLambda = 0.1;
  double train_seconds = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  double mismatch = 0.0;
  for (int f = 0; f < 5; ++f) {
    const std::size_t n = 4 + rng() % 7;
    const double cut = 0.5 * unit(rng);
    std::vector<double> xs(n);
    std::vector<int> ys(n);
    std::string file;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = unit(rng);
      ys[i] = (xs[i] > cut) != (uniform01(rng) < 0.2) ? 1 : -1;
      file += libsvm_line(ys[i], {xs[i]}) + "\n";
    }
    const fs::path dir = shared.work / ("c1_" + std::to_string(f));
    write_text(dir / "train.txt", file);
    const std::string ini =
        "[data]\ntrain = train.txt\ndimension = 1\n\n[objective]\n"
        "metric = error_rate\n\n[solver]\nlambda = 0.1\nseed = " +
        std::to_string(f + 1) + "\n";
    const RunConfig config = parse_run_config(ini, dir);

    const auto start = Clock::now();
    const TrainResult r = run_train(config, dir / "out");
    train_seconds += seconds_since(start);
    shared.traces.push_back({"unconstrained fixture " + std::to_string(f),
                             r.mm.trace});

    const LinearClassifier& c = r.model.classifier;
    const double reached =
        oracle::ramp_error_1d(xs, ys, kLambda, c.weights[0], c.bias);
    mismatch = std::max(
        mismatch, std::abs(reached - r.mm.iterates.back().objective));

    double grid = std::numeric_limits<double>::infinity();
    constexpr int kSteps = 1000;  // step 0.005 over [-5, 5]
    for (int i = -kSteps; i <= kSteps; ++i) {
      for (int j = -kSteps; j <= kSteps; ++j) {
        grid = std::min(grid, oracle::ramp_error_1d(xs, ys, kLambda,
                                                    i * 0.005, j * 0.005));
      }
    }
    const double diff = reached - grid;
    worst = std::max(worst, diff);
    if (diff > 1e-3) {
      out.fail("fixture " + std::to_string(f) + " (n=" + std::to_string(n) +
               ") objective " + num(reached) + " vs grid " + num(grid));
    }
  }
  if (mismatch > 1e-9) {
    out.fail("reported objective differs from reference by " + num(mismatch));
  }
  if (train_seconds >= 10.0) {
    out.fail("training took " + num(train_seconds) + " s");
  }
  out.note("max(objective - grid) " + num(worst) + ", train time " +
           num(train_seconds) + " s");
  return out;
}

// Criterion 2: multiplier search on 2-point sets against a swept dual.

struct TwoPoint {
  double x_pos;
  double x_neg;
  double bound;
};

Outcome criterion_saddle(Shared& shared) {
  Outcome out;
  constexpr double kLambda = 0.1;
  constexpr double kCap = 2.0;
  const std::vector<TwoPoint> fixtures = {
      {1.0, -1.0, 0.3}, {0.8, -0.4, 0.25}, {1.5, 0.2, 0.35}};
  double solve_seconds = 0.0;
  double worst_dual = 0.0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const TwoPoint& fx = fixtures[f];
    const DatasetCollection d = partition_labeled_data(
        "s", 1,
        std::vector<LabeledExample>{testing::labeled({fx.x_pos}, 1),
                                    testing::labeled({fx.x_neg}, -1)});
    const ConstrainedProblem problem(
        d, build_metric(MetricKind::kErrorRate, "s", d),
        {make_constraint(build_metric(MetricKind::kCoverage, "s", d),
                         fx.bound)},
        kLambda, kCap);
    const LinearClassifier anchor = find_initial_point(problem, BiasMode::kFree);
    const double w0 = anchor.weights[0], b0 = anchor.bias;
    const double z0p = w0 * fx.x_pos - b0, z0n = w0 * fx.x_neg - b0;
    const double anchor_cov =
        0.5 * (oracle::ramp(z0p) + oracle::ramp(z0n)) - fx.bound;
    if (anchor_cov > 1e-6) {
      out.fail("fixture " + std::to_string(f) + " anchor infeasible");
      continue;
    }

    const auto coverage = [&](double w, double b) {
      return 0.5 * (oracle::hinge_positive(w * fx.x_pos - b, z0p) +
                    oracle::hinge_positive(w * fx.x_neg - b, z0n)) -
             fx.bound;
    };
    const auto psi = [&](double w, double b, double v) {
      const double error =
          0.5 * (oracle::hinge_negative(w * fx.x_pos - b, z0p) +
                 oracle::hinge_positive(w * fx.x_neg - b, z0n));
      return error + 0.5 * kLambda * w * w + v * coverage(w, b);
    };
    const double x_max = std::max(std::abs(fx.x_pos), std::abs(fx.x_neg));
    const auto dual = [&](double v) {
      const double w_max = std::sqrt(2.0 * (1.0 + v) / kLambda) + 1.0;
      const double b_max = 0.5 + x_max * w_max + 1.0;
      const auto over_b = [&](double w) {
        return oracle::convex_min([&](double b) { return psi(w, b, v); },
                                  -b_max, b_max)
            .second;
      };
      return oracle::convex_min(over_b, -w_max, w_max).second;
    };
    double best = -std::numeric_limits<double>::infinity(), best_v = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double v = k * 1e-3;
      const double value = dual(v);
      if (value > best) best = value, best_v = v;
    }
    if (!(best_v > 0.0)) {
      out.fail("fixture " + std::to_string(f) + " constraint not binding");
    }

    const ConvexSubproblem sub(problem, anchor);
    const std::vector<std::pair<CutChooserKind, BiasChooserKind>> choosers = {
        {CutChooserKind::kMaximization, BiasChooserKind::kMinimization},
        {CutChooserKind::kCentroid, BiasChooserKind::kCentroid}};
    for (const auto& [cut, bias] : choosers) {
      SaddleOptions options;
      options.chooser = cut;
      options.svm.chooser = bias;
      options.svm.seed = 7 + f;
      SolverTrace trace;
      TraceContext ctx;
      ctx.trace = &trace;
      const auto start = Clock::now();
      const SaddleResult r = solve_saddle(sub, 1e-3, options, ctx);
      solve_seconds += seconds_since(start);
      const std::string label = "two-point fixture " + std::to_string(f) +
                                " " + std::string(cut_chooser_name(cut)) +
                                "/" + std::string(bias_chooser_name(bias));
      shared.traces.push_back({label, std::move(trace)});
      const double gap = std::abs(r.lower - best);
      const double violation =
          coverage(r.recovered.weights[0], r.recovered.bias);
      worst_dual = std::max(worst_dual, gap);
      worst_violation = std::max(worst_violation, violation);
      if (gap > 5e-3) {
        out.fail(label + ": L " + num(r.lower) + " vs swept max " + num(best));
      }
      if (violation > 1e-3) {
        out.fail(label + ": hinge constraint violated by " + num(violation));
      }
    }
  }
  if (solve_seconds >= 60.0) out.fail("solves took " + num(solve_seconds) + " s");
  out.note("max |L - swept max| " + num(worst_dual) +
           ", max hinge violation " + num(worst_violation) + ", solve time " +
           num(solve_seconds) + " s");
  return out;
}

// Random constrained problems shared by criteria 3 and 6.

struct RandomProblem {
  std::size_t dimension = 1;
  std::vector<oracle::DenseSet> sets;
  std::vector<oracle::Term> objective;
  std::vector<std::vector<oracle::Term>> constraints;
  std::vector<double> bounds;
  double lambda = 0.1;
};

LinearRateCombination to_combination(const RandomProblem& p,
                                     const std::vector<oracle::Term>& terms) {
  LinearRateCombination combo;
  for (const oracle::Term& t : terms) {
    combo.add(p.sets[t.set].id, t.polarity, t.coefficient);
  }
  return combo;
}

ConstrainedProblem to_problem(const RandomProblem& p) {
  DatasetCollection datasets(p.dimension);
  for (const oracle::DenseSet& s : p.sets) {
    datasets.add(testing::make_dataset(s.id, p.dimension, s.rows));
  }
  std::vector<RateConstraint> constraints;
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    constraints.push_back(
        make_constraint(to_combination(p, p.constraints[j]), p.bounds[j]));
  }
  return ConstrainedProblem(datasets, to_combination(p, p.objective),
                            std::move(constraints), p.lambda, 1e3);
}

RandomProblem draw_problem(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  RandomProblem p;
  p.dimension = 1 + rng() % 5;
  const std::size_t k = 1 + rng() % 3;
  for (std::size_t i = 0; i < k; ++i) {
    oracle::DenseSet set{"D" + std::to_string(i), {}};
    const std::size_t n = 5 + rng() % 21;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<double> x(p.dimension);
      for (double& v : x) v = unit(rng);
      set.rows.push_back(std::move(x));
    }
    p.sets.push_back(std::move(set));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (Polarity pol : {Polarity::kPositive, Polarity::kNegative}) {
      if (uniform01(rng) < 0.6) p.objective.push_back({i, pol, uniform01(rng)});
    }
  }
  if (p.objective.empty()) p.objective.push_back({0, Polarity::kNegative, 1.0});
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<oracle::Term> terms;
    const std::size_t count = 1 + rng() % 2;
    for (std::size_t t = 0; t < count; ++t) {
      terms.push_back({rng() % k,
                       uniform01(rng) < 0.5 ? Polarity::kPositive
                                            : Polarity::kNegative,
                       unit(rng)});
    }
    std::vector<double> w(p.dimension);
    for (double& v : w) v = normal(rng);
    const double b = 0.5 * unit(rng);
    p.bounds.push_back(oracle::combination(p.sets, terms, w, b) +
                       0.06 * uniform01(rng) - 0.02);
    p.constraints.push_back(std::move(terms));
  }
  p.lambda = 0.05 + 0.45 * uniform01(rng);
  return p;
}

double reference_objective(const RandomProblem& p, const LinearClassifier& c) {
  return oracle::combination(p.sets, p.objective, c.weights, c.bias) +
         0.5 * p.lambda * oracle::squared_norm(c.weights);
}

double reference_violation(const RandomProblem& p, const LinearClassifier& c) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    worst = std::max(worst, oracle::combination(p.sets, p.constraints[j],
                                                c.weights, c.bias) -
                                p.bounds[j]);
  }
  return worst;
}

struct MmRun {
  RandomProblem problem;
  MmResult result;
};

// Draws until find_initial_point succeeds, then trains.
MmRun train_random(std::mt19937_64& rng, std::size_t m, MmOptions options,
                   std::size_t* resamples) {
  for (;;) {
    RandomProblem p = draw_problem(rng, m);
    const ConstrainedProblem problem = to_problem(p);
    LinearClassifier init;
    try {
      init = find_initial_point(problem, options.saddle.svm.bias_mode);
    } catch (const InfeasibleError&) {
      if (resamples != nullptr) ++*resamples;
      continue;
    }
    MmResult r = majorize_minimize(problem, init, options);
    return {std::move(p), std::move(r)};
  }
}

Outcome criterion_monotone(Shared& shared) {
  Outcome out;
  std::mt19937_64 rng(303);
  std::size_t resamples = 0, binding = 0;
  double worst_increase = -std::numeric_limits<double>::infinity();
  double worst_violation = -std::numeric_limits<double>::infinity();
  double mismatch = 0.0;
  constexpr double kEps = 1e-3;
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t m = rng() % 3;
    MmOptions options;
    options.eps = kEps;
    options.saddle.svm.seed = 1000 + i;
    if (m == 1 && i % 2 == 1) options.saddle.chooser = CutChooserKind::kCentroid;
    if (i % 3 == 2) options.saddle.svm.chooser = BiasChooserKind::kCentroid;
    const std::string label = "random problem " + std::to_string(i) +
                              " (m=" + std::to_string(m) + ")";
    MmRun run;
    try {
      run = train_random(rng, m, options, &resamples);
    } catch (const std::exception& e) {
      out.fail(label + " threw: " + e.what());
      continue;
    }
    shared.traces.push_back({label, run.result.trace});
    const auto& its = run.result.iterates;
    double prev = std::numeric_limits<double>::infinity();
    bool was_binding = false;
    for (std::size_t t = 0; t < its.size(); ++t) {
      const double obj = reference_objective(run.problem, its[t].classifier);
      mismatch = std::max(mismatch, std::abs(obj - its[t].objective));
      if (t > 0) worst_increase = std::max(worst_increase, obj - prev);
      if (t > 0 && obj > prev + kEps + 1e-9) {
        out.fail(label + " objective rose at iterate " + std::to_string(t) +
                 ": " + num(prev) + " -> " + num(obj));
      }
      prev = obj;
      if (m > 0) {
        const double viol = reference_violation(run.problem,
                                                its[t].classifier);
        worst_violation = std::max(worst_violation, viol);
        if (viol > -1e-3) was_binding = true;
        if (viol > 1e-6) {
          out.fail(label + " iterate " + std::to_string(t) + " violates by " +
                   num(viol));
        }
      }
    }
    if (was_binding) ++binding;
  }
  if (mismatch > 1e-9) {
    out.fail("reported objectives differ from reference by " + num(mismatch));
  }
  out.note("max objective increase " + num(worst_increase) +
           ", max violation " + num(worst_violation) + ", " +
           std::to_string(binding) + " runs with a near-binding constraint, " +
           std::to_string(resamples) + " infeasible draws resampled");
  return out;
}

// Criterion 4: hinge bounds dominate the ramp and touch it at the anchor.

Outcome criterion_bounds() {
  Outcome out;
  const std::vector<double> grid = {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5};
  std::size_t below = 0, loose = 0;
  for (double z : grid) {
    for (double z0 : grid) {
      const double pos = ramp_bound_positive(z, z0);
      const double neg = ramp_bound_negative(z, z0);
      if (pos < oracle::ramp(z) || neg < oracle::ramp(-z)) ++below;
      if (z == z0 && (pos != oracle::ramp(z) || neg != oracle::ramp(-z))) {
        ++loose;
      }
    }
  }
  if (below > 0) out.fail(std::to_string(below) + " grid points below ramp");
  if (loose > 0) out.fail(std::to_string(loose) + " anchors not tight");

  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = 1 + rng() % 5, n = 1 + rng() % 30;
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    for (auto& r : rows) {
      for (double& v : r) v = 2.0 * unit(rng);
    }
    std::vector<double> w(dim);
    for (double& v : w) v = unit(rng);
    const LinearClassifier c{w, unit(rng)};
    const DatasetPtr ds = testing::make_dataset("d", dim, rows);
    const RatePair bound = bound_rates(*ds, c, c);
    const RatePair ramp = ramp_rates(*ds, c);
    const oracle::DenseSet dense{"d", rows};
    const double ref_pos = oracle::rate(dense, Polarity::kPositive, w, c.bias);
    const double ref_neg = oracle::rate(dense, Polarity::kNegative, w, c.bias);
    worst = std::max({worst, std::abs(bound.positive - ramp.positive),
                      std::abs(bound.negative - ramp.negative),
                      std::abs(bound.positive - ref_pos),
                      std::abs(bound.negative - ref_neg)});
  }
  if (worst > 1e-12) out.fail("anchor rates differ by " + num(worst));
  out.note("49 grid pairs per side, 50 anchored instances, max difference " +
           num(worst));
  return out;
}

// Criterion 5: SDCA duality gap and the primal-dual weight map.

Outcome criterion_sdca() {
  Outcome out;
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double min_gap = std::numeric_limits<double>::infinity(), max_gap = 0.0;
  double worst_w = 0.0, worst_box = 0.0;
  for (int inst = 0; inst < 30; ++inst) {
    const std::size_t n = 1 + rng() % 50, dim = 1 + rng() % 10;
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim, 0.0));
    std::vector<SparseVector> sparse(n);
    std::vector<double> a_plus(n), a_minus(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (double& v : rows[i]) v = uniform01(rng) < 0.6 ? unit(rng) : 0.0;
      sparse[i] = testing::dense_to_sparse(rows[i]);
      a_plus[i] = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
      a_minus[i] = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
    }
    const double lambda = std::pow(10.0, -3.0 + 3.0 * uniform01(rng));
    const double bias = unit(rng);
    std::vector<std::span<const Feature>> views(sparse.begin(), sparse.end());
    const WeightedSvm svm(views, dim, a_plus, a_minus, lambda, 0.0);
    SdcaOptions options;
    options.gap = 1e-6;
    options.seed = 50 + inst;
    const DualState s = sdca_optimize(svm, bias, options, zero_state(svm));

    // w(xi) = -(1/(lambda n)) sum xi_i x_i
    std::vector<double> w(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        w[k] -= s.xi[i] * rows[i][k] / (lambda * static_cast<double>(n));
      }
    }
    double primal = 0.0, conj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = oracle::score(rows[i], s.weights, bias);
      primal += a_plus[i] * std::max(0.0, 0.5 + z) +
                a_minus[i] * std::max(0.0, 0.5 - z);
      worst_box = std::max({worst_box, s.xi[i] - a_plus[i],
                            -a_minus[i] - s.xi[i]});
      conj += oracle::loss_conjugate(s.xi[i], a_plus[i], a_minus[i]) +
              s.xi[i] * bias;
    }
    primal = primal / static_cast<double>(n) +
             0.5 * lambda * oracle::squared_norm(s.weights);
    const double dual_value = -conj / static_cast<double>(n) -
                              0.5 * lambda * oracle::squared_norm(w);
    const double gap = primal - dual_value;
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
    for (std::size_t k = 0; k < dim; ++k) {
      worst_w = std::max(worst_w, std::abs(w[k] - s.weights[k]));
    }
    const std::vector<double> lib_w = svm.weights_from_dual(s.xi);
    for (std::size_t k = 0; k < dim; ++k) {
      worst_w = std::max(worst_w, std::abs(lib_w[k] - s.weights[k]));
    }
    if (s.gap() < 0.0 || s.gap() > 1e-6) {
      out.fail("instance " + std::to_string(inst) + " reported gap " +
               num(s.gap()));
    }
  }
  // Rounding can leave a true zero gap a few ulps negative.
  if (min_gap < -1e-12 || max_gap > 1e-6) {
    out.fail("reference gap range [" + num(min_gap) + ", " + num(max_gap) +
             "]");
  }
  if (worst_box > 1e-12) out.fail("dual variables leave their box");
  if (worst_w > 1e-9) out.fail("weight mismatch " + num(worst_w));
  out.note("30 instances, reference gap in [" + num(min_gap) + ", " +
           num(max_gap) + "], max weight mismatch " + num(worst_w));
  return out;
}

// Criterion 6: trace audit over every solver run.

Outcome criterion_audit(Shared& shared) {
  Outcome out;
  // Extra runs with the centroid chooser at both levels.
  std::mt19937_64 rng(606);
  for (std::size_t i = 0; i < 8; ++i) {
    MmOptions options;
    options.saddle.chooser = CutChooserKind::kCentroid;
    options.saddle.svm.chooser = BiasChooserKind::kCentroid;
    options.saddle.svm.seed = 600 + i;
    const std::string label = "centroid problem " + std::to_string(i);
    try {
      MmRun run = train_random(rng, 1, options, nullptr);
      shared.traces.push_back({label, std::move(run.result.trace)});
    } catch (const std::exception& e) {
      out.fail(label + " threw: " + e.what());
    }
  }

  std::map<std::string, std::size_t> kinds;
  std::size_t failed_runs = 0, rows = 0;
  std::string first;
  for (const AuditedRun& run : shared.traces) {
    const AuditReport report = audit_trace(run.trace);
    rows += run.trace.rows().size();
    if (report.passed) continue;
    ++failed_runs;
    for (const std::string& f : report.failures) {
      const auto colon = f.find(": ");
      const auto paren = f.rfind(" (");
      kinds[f.substr(colon + 2, paren - colon - 2)] += 1;
      if (first.empty()) first = run.label + ": " + f;
    }
  }
  std::size_t failed_notes = 0;
  for (const std::string& note : shared.experiment_notes) {
    std::cerr << "  note: " << note << "\n";
    if (note.find("audit failed") != std::string::npos) ++failed_notes;
  }

  // Smallest eps/(U - L) chosen by the bias centroid chooser.
  double ratio = std::numeric_limits<double>::infinity();
  for (const AuditedRun& run : shared.traces) {
    for (const TraceRow& r : run.trace.rows()) {
      if (r.level != TraceLevel::kBias || r.chooser != "centroid") continue;
      const double gap = r.upper - r.lower;
      if (gap > 1e-9) ratio = std::min(ratio, r.eps / gap);
    }
  }

  if (failed_runs > 0) {
    std::string summary;
    for (const auto& [kind, count] : kinds) {
      summary += (summary.empty() ? "" : ", ") + kind + " x" +
                 std::to_string(count);
    }
    out.fail(std::to_string(failed_runs) + " of " +
             std::to_string(shared.traces.size()) + " runs failed (" +
             summary + "); first: " + first);
  }
  if (failed_notes > 0) {
    out.fail(std::to_string(failed_notes) + " experiment runs report audit "
             "failures");
  }
  out.note(std::to_string(shared.traces.size()) + " traces, " +
           std::to_string(rows) + " rows, " +
           std::to_string(shared.experiment_notes.size()) +
           " experiment notes; min bias centroid eps/(U'-L') " + num(ratio) +
           " (1/2e = " + num(1.0 / (2.0 * std::numbers::e)) + ")");
  return out;
}

// Criterion 7: synthetic churn.

Outcome criterion_churn(Shared& shared) {
  Outcome out;
  ChurnConfig config;
  config.taus = {0.05, 0.1, 0.2};
  config.mc_draws = 100000;
  config.workers = 1;
  const auto start = Clock::now();
  const ChurnSummary summary = run_experiment_churn_synthetic(config);
  const double seconds = seconds_since(start);
  for (const std::string& w : summary.warnings) {
    shared.experiment_notes.push_back("churn: " + w);
  }
  std::size_t active = 0;
  double worst = 0.0;
  for (const ChurnRow& r : summary.rows) {
    if (r.method != "constrained" || r.split != "train" || !r.active) continue;
    ++active;
    const double dev = std::abs(r.churn_mc - r.tau);
    worst = std::max(worst, dev);
    if (dev > 0.02) {
      out.fail("tau " + num(r.tau) + " churn " + num(r.churn_mc));
    }
  }
  if (seconds >= 300.0) out.fail("took " + num(seconds) + " s");
  out.note(std::to_string(active) + " active constraints, max |churn - tau| " +
           num(worst) + ", " + num(seconds) + " s");
  return out;
}

// Criteria 8 and 9: Adult.

const AdultSummary& adult(Shared& shared) {
  if (!shared.adult) {
    AdultConfig config;
    const fs::path dir = fs::path(RATECON_DATA_DIR) / "adult";
    config.train = dir / "adult123.train";
    config.test = dir / "adult123.test";
    config.kappas = {0.6, 0.8, 1.0};
    config.zafar_c = {0.0, 0.01, 1e6};
    config.repeats = 3;
    config.bias_mode = BiasMode::kNone;
    config.workers = 1;
    const auto start = Clock::now();
    shared.adult = run_experiment_adult(config);
    shared.adult_seconds = seconds_since(start);
    for (const std::string& w : shared.adult->warnings) {
      shared.experiment_notes.push_back("adult: " + w);
    }
    for (const AdultRow& r : shared.adult->rows) {
      if (!r.note.empty()) {
        shared.experiment_notes.push_back("adult " + r.method + " " +
                                          num(r.hyper) + ": " + r.note);
      }
    }
  }
  return *shared.adult;
}

double mean_of(const std::vector<AdultRow>& rows, const std::string& method,
               double hyper, double AdultRow::*field) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const AdultRow& r : rows) {
    if (r.method == method && r.hyper == hyper) sum += r.*field, ++count;
  }
  return count > 0 ? sum / static_cast<double>(count)
                   : std::numeric_limits<double>::quiet_NaN();
}

Outcome criterion_adult(Shared& shared) {
  Outcome out;
  const AdultSummary& s = adult(shared);
  const std::vector<double> kappas = {1.0, 0.8, 0.6};  // 1/kappa ascending
  std::string train_ratios;
  for (const AdultRow& r : s.rows) {
    if (r.method != "constrained") continue;
    train_ratios += (train_ratios.empty() ? "" : " ") + num(r.train_ratio_randomized);
    if (!(r.train_ratio_randomized <= 1.0 / r.hyper + 0.02)) {
      out.fail("(a) kappa " + num(r.hyper) + " run " + std::to_string(r.run) +
               " train randomized M/F " + num(r.train_ratio_randomized));
    }
  }
  std::string test_ratios;
  double prev = -std::numeric_limits<double>::infinity();
  for (double k : kappas) {
    const double ratio =
        mean_of(s.rows, "constrained", k, &AdultRow::test_ratio);
    test_ratios += (test_ratios.empty() ? "" : " ") + num(ratio);
    if (!(ratio >= prev)) {
      out.fail("(b) test M/F not monotone at kappa " + num(k));
    }
    prev = ratio;
  }
  const double err =
      mean_of(s.rows, "constrained", 0.6, &AdultRow::test_error);
  const double svm_err = mean_of(s.rows, "svm", 0.0, &AdultRow::test_error);
  if (!(err <= svm_err + 0.05)) {
    out.fail("(c) test error " + num(err) + " vs svm " + num(svm_err));
  }
  if (shared.adult_seconds >= 1800.0) {
    out.fail("took " + num(shared.adult_seconds) + " s");
  }
  out.note("train randomized M/F [" + train_ratios +
           "], mean test M/F for kappa 1.0/0.8/0.6 [" + test_ratios +
           "], test error " + num(err) + " vs svm " + num(svm_err) + ", " +
           num(shared.adult_seconds) + " s for the sweep");
  return out;
}

Outcome criterion_zafar(Shared& shared) {
  Outcome out;
  const AdultSummary& s = adult(shared);
  std::map<std::size_t, double> svm_hinge;
  for (const AdultRow& r : s.rows) {
    if (r.method == "svm") svm_hinge[r.run] = r.hinge_objective;
  }
  double worst_cov = -std::numeric_limits<double>::infinity();
  double worst_hinge = 0.0;
  std::size_t seen = 0;
  for (const AdultRow& r : s.rows) {
    if (r.method != "zafar") continue;
    ++seen;
    const double excess = std::abs(r.covariance) - r.hyper;
    if (r.hyper <= 1.0) worst_cov = std::max(worst_cov, excess);
    if (excess > 1e-3) {
      out.fail("c " + num(r.hyper) + " run " + std::to_string(r.run) +
               " covariance " + num(r.covariance));
    }
    if (r.hyper >= 1e6) {
      const double diff = std::abs(r.hinge_objective - svm_hinge.at(r.run));
      worst_hinge = std::max(worst_hinge, diff);
      if (diff > 1e-3) {
        out.fail("c 1e6 run " + std::to_string(r.run) + " objective " +
                 num(r.hinge_objective) + " vs svm " +
                 num(svm_hinge.at(r.run)));
      }
    }
  }
  if (seen != 9) out.fail("expected 9 zafar rows, saw " + std::to_string(seen));
  out.note("max |cov| - c (c <= 1) " + num(worst_cov) +
           ", max hinge objective gap at c = 1e6 " + num(worst_hinge));
  return out;
}

// Criterion 10: the generalization constant.

Outcome criterion_constant() {
  Outcome out;
  const double e = generalization_E(1.0, 1.0, 1.0, 4.0 * std::exp(-8.0), 1);
  if (e != 13.0) out.fail("E = " + num(e) + ", want 13 exactly");

  std::mt19937_64 rng(1010);
  std::size_t lambda_bad = 0, cap_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = 0.1 + 2.0 * uniform01(rng);
    const double b = 0.1 + 5.0 * uniform01(rng);
    const double lambda = std::pow(10.0, -4.0 + 4.0 * uniform01(rng));
    const double delta = 0.01 + 0.5 * uniform01(rng);
    const std::size_t k = 1 + rng() % 5;
    const double smaller = lambda * (0.1 + 0.8 * uniform01(rng));
    if (!(generalization_E(x, b, smaller, delta, k) >
          generalization_E(x, b, lambda, delta, k))) {
      ++lambda_bad;
    }

    const std::size_t dim = 1 + rng() % 3;
    std::vector<std::vector<double>> rows(3, std::vector<double>(dim));
    for (auto& r : rows) {
      for (double& v : r) v = 2.0 * uniform01(rng) - 1.0;
    }
    DatasetCollection ds(dim);
    ds.add(testing::make_dataset("a", dim, rows));
    const LinearRateCombination objective =
        LinearRateCombination().add("a", Polarity::kPositive, 1.0);
    const RateConstraint c = make_constraint(
        LinearRateCombination().add("a", Polarity::kNegative,
                                    0.1 + uniform01(rng)),
        0.5);
    const double cap = std::pow(10.0, 3.0 * uniform01(rng));
    const double larger = cap * (1.5 + 10.0 * uniform01(rng));
    const ConstrainedProblem p1(ds, objective, {c}, lambda, cap);
    const ConstrainedProblem p2(ds, objective, {c}, lambda, larger);
    const double norm = p1.max_norm();
    if (!(generalization_E(p2, norm, delta, k) >
          generalization_E(p1, norm, delta, k))) {
      ++cap_bad;
    }
  }
  if (lambda_bad > 0) {
    out.fail(std::to_string(lambda_bad) + " draws where smaller lambda did "
             "not raise E");
  }
  if (cap_bad > 0) {
    out.fail(std::to_string(cap_bad) + " draws where a larger cap did not "
             "raise E");
  }
  out.note("E(1,1,1,4e^-8,1) = " + num(e) + ", 100 monotonicity draws");
  return out;
}

// Criterion 11: repeated training is byte-identical.

Outcome criterion_determinism(Shared& shared) {
  Outcome out;
  const fs::path dir = shared.work / "c11";
  write_text(dir / "train.txt",
             "+1 1:1\n+1 1:0.5\n+1 1:-0.3\n-1 1:-1\n-1 1:0.2\n-1 1:-0.6\n"
             "+1 1:0.8\n-1 1:0.1\n");
  const std::vector<std::pair<std::string, std::string>> solvers = {
      {"max/min", "cut_chooser = max\nbias_chooser = min\n"},
      {"centroid/centroid", "cut_chooser = centroid\nbias_chooser = centroid\n"},
  };
  std::size_t compared = 0;
  for (const auto& [name, lines] : solvers) {
    const std::string ini =
        "[data]\ntrain = train.txt\n\n[objective]\nmetric = error_rate\n\n"
        "[constraint cov]\ntype = bound\nmetric = coverage\nat_most = 0.3\n\n"
        "[solver]\nlambda = 0.1\nseed = 11\n" +
        lines;
    const RunConfig config = parse_run_config(ini, dir);
    std::vector<fs::path> outs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out_dir =
          dir / (name.substr(0, name.find('/')) + std::to_string(rep));
      fs::remove_all(out_dir);
      const TrainResult r = run_train(config, out_dir);
      if (rep == 0) shared.traces.push_back({"repeat " + name, r.mm.trace});
      outs.push_back(out_dir);
    }
    for (const std::string& file : {config.output.model, config.output.trace}) {
      const std::string a = read_bytes(outs[0] / file);
      const std::string b = read_bytes(outs[1] / file);
      ++compared;
      if (a.empty() || a != b) out.fail(name + " " + file + " differs");
    }
  }
  out.note(std::to_string(compared) + " file pairs compared");
  return out;
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome(Shared&)> run;
};

}  // namespace
}  // namespace ratecon::acceptance

int main(int argc, char** argv) {
  using namespace ratecon::acceptance;
  CLI::App app{"ratecon acceptance checks"};
  std::vector<int> only;
  std::string work = (fs::temp_directory_path() / "ratecon_acceptance").string();
  app.add_option("--only", only, "Criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 11));
  app.add_option("--work-dir", work, "Scratch directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "unconstrained training matches grid search",
       criterion_unconstrained},
      {2, "multiplier search matches swept dual", criterion_saddle},
      {3, "majorization is monotone and feasible", criterion_monotone},
      {4, "hinge bounds dominate ramp and are tight at anchor",
       [](Shared&) { return criterion_bounds(); }},
      {5, "SDCA gap and weight map", [](Shared&) { return criterion_sdca(); }},
      {6, "trace audit on every run", criterion_audit},
      {7, "churn constraint met in Monte Carlo", criterion_churn},
      {8, "Adult fairness sweep", criterion_adult},
      {9, "Zafar covariance baseline", criterion_zafar},
      {10, "generalization constant", [](Shared&) {
         return criterion_constant();
       }},
      {11, "repeated training is byte-identical", criterion_determinism},
  };
  // The audit runs last so it sees every trace.
  const std::vector<int> order = {1, 2, 3, 4, 5, 11, 7, 8, 9, 10, 6};
  const std::set<int> selected(only.begin(), only.end());

  Shared shared;
  shared.work = work;
  fs::remove_all(shared.work);
  fs::create_directories(shared.work);

  std::map<int, std::optional<Outcome>> results;
  for (int id : order) {
    if (!selected.empty() && !selected.count(id)) continue;
    const Criterion& c = criteria[id - 1];
    std::cerr << "running criterion " << id << ": " << c.title << std::endl;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run(shared);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cerr << "  done in " << num(seconds_since(start)) << " s" << std::endl;
    results[id] = o;
  }

  bool all = true;
  for (const Criterion& c : criteria) {
    const auto it = results.find(c.id);
    if (it == results.end()) {
      std::cout << "criterion " << c.id << " SKIP " << c.title << "\n";
      continue;
    }
    const Outcome& o = *it->second;
    all = all && o.pass;
    std::cout << "criterion " << c.id << (o.pass ? " PASS " : " FAIL ")
              << c.title << " [" << o.detail << "]\n";
  }
  return all ? 0 : 1;
}
