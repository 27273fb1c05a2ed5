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

#include "ratecon/experiments.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "ratecon/analysis.hpp"
#include "ratecon/baselines.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/majorization.hpp"
#include "ratecon/metrics.hpp"
#include "ratecon/random.hpp"
#include "ratecon/rates.hpp"
#include "ratecon/runner.hpp"
#include "ratecon/subproblem.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

namespace {

constexpr const char* kFemale = "F";
constexpr const char* kMale = "M";

double safe_ratio(double num, double den) {
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

struct AdultContext {
  const AdultConfig* config;
  const LoadedData* data;
  double lambda;
  LinearRateCombination objective;
  SparseVector xbar;
  // Hinge objective at the zero anchor, no constraints.
  const ConvexSubproblem* hinge = nullptr;
};

AdultRow make_row(std::string method, double hyper, std::size_t run,
                  std::uint64_t seed) {
  AdultRow row;
  row.method = std::move(method);
  row.hyper = hyper;
  row.run = run;
  row.seed = seed;
  return row;
}

void evaluate_adult(const AdultContext& ctx, const LinearClassifier& clf,
                    AdultRow& row) {
  const auto eval = [&](const Split& split, double& error, double& error_rnd,
                        double& ratio, double& ratio_rnd) {
    const DatasetCollection& ds = split.datasets;
    const LinearRateCombination err =
        build_metric(MetricKind::kErrorRate, split.prefix, ds);
    error = evaluate_combination(err, ds, clf, IndicatorRate{});
    error_rnd = evaluate_combination(err, ds, clf, RampRate{});
    const UnlabeledDataset& f = ds.at(group_prefix(split.prefix, kFemale));
    const UnlabeledDataset& m = ds.at(group_prefix(split.prefix, kMale));
    ratio = safe_ratio(indicator_rates(m, clf).positive,
                       indicator_rates(f, clf).positive);
    ratio_rnd =
        safe_ratio(ramp_rates(m, clf).positive, ramp_rates(f, clf).positive);
  };
  eval(ctx.data->train, row.train_error, row.train_error_randomized,
       row.train_ratio, row.train_ratio_randomized);
  eval(*ctx.data->test, row.test_error, row.test_error_randomized,
       row.test_ratio, row.test_ratio_randomized);
  row.covariance = dot(clf.weights, ctx.xbar);
  if (ctx.hinge != nullptr) {
    row.hinge_objective = ctx.hinge->bound_objective(clf);
  }
}

RateConstraint adult_fairness(const Split& split, double kappa) {
  // s_p(M) <= s_p(F) / kappa
  return build_fairness_constraint(group_prefix(split.prefix, kFemale),
                                   group_prefix(split.prefix, kMale), kappa,
                                   FairnessForm::kScaledByInverseKappa,
                                   "fairness");
}

std::string audit_note(const SolverTrace& trace) {
  const AuditReport audit = audit_trace(trace);
  if (audit.passed) return "";
  std::string note = "audit failed:";
  for (const std::string& f : audit.failures) note += " " + f + ";";
  return note;
}

std::vector<AdultRow> adult_constrained(const AdultContext& ctx, double kappa,
                                        std::size_t run, std::uint64_t seed) {
  const AdultConfig& c = *ctx.config;
  const Split& train = ctx.data->train;
  const ConstrainedProblem problem(train.datasets, ctx.objective,
                                   {adult_fairness(train, kappa)}, ctx.lambda,
                                   c.multiplier_cap);
  MmOptions options;
  options.iterations = c.iterations;
  options.eps = c.eps;
  options.saddle.svm.bias_mode = c.bias_mode;
  options.saddle.svm.seed = seed;
  AdultRow row = make_row("constrained", kappa, run, seed);
  LinearClassifier clf;
  try {
    const LinearClassifier init = find_initial_point(problem, c.bias_mode);
    const MmResult mm = majorize_minimize(problem, init, options);
    clf = mm.classifier;
    row.ramp_objective = mm.iterates.back().objective;
    row.note = audit_note(mm.trace);
    for (const std::string& w : mm.warnings) row.note += " " + w + ";";
  } catch (const MmError& e) {
    clf = e.partial().classifier;
    row.note = std::string("failed: ") + e.what();
  }
  evaluate_adult(ctx, clf, row);
  return {row};
}

// Unconstrained SVM, then for each kappa the same model with the female
// indicator weight shifted just enough to meet the fairness constraint.
std::vector<AdultRow> adult_svm(const AdultContext& ctx, std::size_t run,
                                std::uint64_t seed) {
  const AdultConfig& c = *ctx.config;
  const Split& train = ctx.data->train;
  BaselineOptions options;
  options.svm.bias_mode = c.bias_mode;
  options.svm.seed = seed;
  options.eps = c.eps / 10.0;
  const LinearClassifier svm =
      train_unconstrained_svm(train.datasets, ctx.objective, ctx.lambda, options);
  std::vector<AdultRow> rows;
  AdultRow base = make_row("svm", 0.0, run, seed);
  evaluate_adult(ctx, svm, base);
  rows.push_back(base);
  if (!c.thresholded) return rows;

  const std::string female = group_prefix(train.prefix, kFemale);
  const double male_rate =
      indicator_rates(train.datasets.at(group_prefix(train.prefix, kMale)), svm)
          .positive;
  const std::uint32_t feature = c.female_feature - 1;
  for (double kappa : c.kappas) {
    AdultRow row = make_row("thresholded_svm", kappa, run, seed);
    // s_p(F) >= kappa s_p(M) with s_p(M) fixed, as a bound on s_n(F).
    const RateConstraint constraint = make_constraint(
        LinearRateCombination().add(female, Polarity::kNegative, 1.0),
        1.0 - kappa * male_rate, "fairness_threshold");
    LinearClassifier clf = svm;
    try {
      const LinearClassifier shifted =
          threshold_for_constraint(svm, constraint, train.datasets);
      clf.weights[feature] += svm.bias - shifted.bias;
    } catch (const InfeasibleError& e) {
      row.note = std::string("threshold failed: ") + e.what();
    }
    evaluate_adult(ctx, clf, row);
    rows.push_back(row);
  }
  return rows;
}

std::vector<AdultRow> adult_zafar(const AdultContext& ctx, double cval,
                                  std::size_t run, std::uint64_t seed) {
  const AdultConfig& c = *ctx.config;
  BaselineOptions options;
  options.svm.bias_mode = BiasMode::kNone;
  options.svm.seed = seed;
  options.eps = c.eps;
  AdultRow row = make_row("zafar", cval, run, seed);
  const ZafarResult z =
      train_zafar_baseline(ctx.data->train.datasets, ctx.objective, ctx.xbar,
                           ctx.lambda, cval, options);
  for (const std::string& w : z.saddle.warnings) row.note += w + ";";
  evaluate_adult(ctx, z.classifier, row);
  return {row};
}

// Synthetic churn.

constexpr std::size_t kChurnDim = 5;

struct RawPoint {
  double x1;
  double x2;
  int label;
};

RawPoint draw_point(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RawPoint p{0.0, 0.0, uniform01(rng) < 0.3 ? 1 : -1};
  if (p.label > 0) {
    if (uniform01(rng) < 0.5) {
      p.x1 = 1.0 + 0.8 * normal(rng);
      p.x2 = 1.0 + 0.8 * normal(rng);
    } else {
      p.x1 = -0.5 + 0.6 * normal(rng);
      p.x2 = 1.5 + 0.6 * normal(rng);
    }
  } else {
    p.x1 = -0.5 + normal(rng);
    p.x2 = -0.5 + normal(rng);
  }
  return p;
}

SparseVector churn_features(const RawPoint& p) {
  return make_sparse({{0, p.x1},
                      {1, p.x2},
                      {2, p.x1 * p.x1 / 4.0},
                      {3, p.x2 * p.x2 / 4.0},
                      {4, p.x1 * p.x2 / 4.0}});
}

int deployed_prediction(const RawPoint& p) { return p.x1 > 0.0 ? 1 : -1; }

LinearClassifier deployed_model(double scale) {
  LinearClassifier clf = LinearClassifier::zeros(kChurnDim);
  clf.weights[0] = scale;
  clf.bias = 0.0;
  return clf;
}

void generate_set(std::size_t n, bool biased, std::mt19937_64& rng,
                  LibsvmData& train, LibsvmData& test,
                  std::vector<int>& train_baseline,
                  std::vector<int>& test_baseline) {
  const std::size_t n_train = n - n / 5;
  train.dimension = test.dimension = kChurnDim;
  for (std::size_t i = 0; i < n;) {
    const RawPoint p = draw_point(rng);
    if (biased && uniform01(rng) >= std::exp(-2.0 * std::abs(p.x1))) {
      continue;
    }
    LibsvmData& out = i < n_train ? train : test;
    std::vector<int>& base = i < n_train ? train_baseline : test_baseline;
    out.labels.push_back(p.label);
    out.features.push_back(churn_features(p));
    base.push_back(deployed_prediction(p));
    ++i;
  }
}

struct ChurnSplit {
  std::string name;
  DatasetCollection datasets{kChurnDim};
};

ChurnSplit churn_split(const std::string& name, const LibsvmData& d1,
                       const LibsvmData& d2, const LibsvmData& d3,
                       const std::vector<int>& d3_baseline) {
  const auto labeled = [](const LibsvmData& d) {
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
      out.push_back({d.features[i], d.labels[i], std::nullopt, std::nullopt});
    }
    return out;
  };
  ChurnSplit s{name};
  s.datasets.merge(partition_labeled_data("d1", kChurnDim, labeled(d1)));
  s.datasets.merge(partition_labeled_data("d2", kChurnDim, labeled(d2)));
  s.datasets.merge(
      partition_by_baseline("d3", kChurnDim, d3.features, d3_baseline));
  return s;
}

LinearRateCombination churn_objective(const DatasetCollection& ds,
                                      std::size_t n2) {
  return build_metric(MetricKind::kErrorRate, "d1", ds) +
         build_metric(MetricKind::kFalsePositives, "d2", ds)
             .scaled(1.0 / static_cast<double>(n2));
}

ChurnRow churn_row(const std::string& method, double tau,
                   const ChurnSplit& split, const LinearClassifier& clf,
                   std::size_t draws, std::uint64_t seed) {
  const DatasetCollection& ds = split.datasets;
  const LinearRateCombination churn =
      build_metric(MetricKind::kChurnRate, "d3", ds);
  const LinearRateCombination error =
      build_metric(MetricKind::kErrorRate, "d1", ds);
  const LinearRateCombination recall =
      build_metric(MetricKind::kRecall, "d2", ds);
  ChurnRow row;
  row.method = method;
  row.tau = tau;
  row.split = split.name;
  row.churn = evaluate_combination(churn, ds, clf, IndicatorRate{});
  row.churn_randomized = evaluate_combination(churn, ds, clf, RampRate{});
  row.churn_mc = draws > 0 ? randomized_estimate(churn, ds, clf, draws, seed)
                           : std::numeric_limits<double>::quiet_NaN();
  row.error = evaluate_combination(error, ds, clf, IndicatorRate{});
  row.error_randomized = evaluate_combination(error, ds, clf, RampRate{});
  row.recall = evaluate_combination(recall, ds, clf, IndicatorRate{});
  row.recall_randomized = evaluate_combination(recall, ds, clf, RampRate{});
  return row;
}

}  // namespace

AdultSummary run_experiment_adult(const AdultConfig& config) {
  DataConfig dc;
  dc.train = config.train;
  dc.test = config.test;
  dc.dimension = config.dimension;
  dc.group_feature = config.female_feature;
  dc.group_present = kFemale;
  dc.group_absent = kMale;
  const LoadedData data = load_data(dc);

  AdultSummary summary;
  const Split& train = data.train;
  summary.n_train = train.data.size();
  summary.n_test = data.test->data.size();
  const std::uint32_t male_index = config.male_feature - 1;
  std::size_t inconsistent = 0;
  for (std::size_t i = 0; i < train.data.size(); ++i) {
    bool male = false;
    for (const Feature& f : train.data.features[i]) {
      if (f.index == male_index && f.value != 0.0) male = true;
    }
    const bool female = train.groups[i] == kFemale;
    if (male == female) ++inconsistent;
    (female ? summary.n_female : summary.n_male) += 1;
    if (train.data.labels[i] > 0) {
      (female ? summary.positives_female : summary.positives_male) += 1;
    }
  }
  if (inconsistent > 0) {
    summary.warnings.push_back(std::to_string(inconsistent) +
                               " training examples do not have exactly one "
                               "gender feature set");
  }
  const double positive_ratio =
      safe_ratio(static_cast<double>(summary.positives_male),
                 static_cast<double>(summary.positives_female));
  if (!(positive_ratio > 4.0 && positive_ratio < 8.0)) {
    summary.warnings.push_back(
        "male/female positive count ratio " + format_double(positive_ratio) +
        " is far from the expected six; check the gender feature indices");
  }

  AdultContext ctx{&config, &data,
                   config.lambda.value_or(1.0 / static_cast<double>(
                                                    summary.n_train)),
                   build_metric(MetricKind::kErrorRate, train.prefix,
                                train.datasets),
                   zafar_mean_difference(
                       train.datasets.at(group_prefix(train.prefix, kMale)),
                       train.datasets.at(group_prefix(train.prefix, kFemale)))};
  summary.lambda = ctx.lambda;
  const ConstrainedProblem plain(train.datasets, ctx.objective, {}, ctx.lambda,
                                 config.multiplier_cap);
  const ConvexSubproblem hinge(
      plain, LinearClassifier{std::vector<double>(config.dimension, 0.0), 0.0});
  ctx.hinge = &hinge;

  const bool zafar = config.zafar && config.bias_mode == BiasMode::kNone;
  if (config.zafar && !zafar) {
    summary.warnings.push_back("zafar baseline skipped: it needs bias none");
  }
  std::vector<std::function<std::vector<AdultRow>()>> tasks;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = derive_seed(config.seed, r);
    tasks.push_back([&ctx, r, seed] { return adult_svm(ctx, r, seed); });
    for (double kappa : config.kappas) {
      tasks.push_back([&ctx, kappa, r, seed] {
        return adult_constrained(ctx, kappa, r, seed);
      });
    }
    if (zafar) {
      for (double cval : config.zafar_c) {
        tasks.push_back(
            [&ctx, cval, r, seed] { return adult_zafar(ctx, cval, r, seed); });
      }
    }
  }
  for (auto& rows : run_ordered(tasks, config.workers)) {
    for (AdultRow& row : rows) summary.rows.push_back(std::move(row));
  }
  return summary;
}

void write_adult_csv(std::ostream& out, const AdultSummary& summary) {
  out << "method,hyper,run,seed,train_error,test_error,"
         "train_error_randomized,test_error_randomized,train_ratio,"
         "test_ratio,train_ratio_randomized,test_ratio_randomized,"
         "covariance,ramp_objective,hinge_objective,note\n";
  for (const AdultRow& r : summary.rows) {
    std::string note = r.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out << r.method << ',' << format_double(r.hyper) << ',' << r.run << ','
        << r.seed << ',' << format_double(r.train_error) << ','
        << format_double(r.test_error) << ','
        << format_double(r.train_error_randomized) << ','
        << format_double(r.test_error_randomized) << ','
        << format_double(r.train_ratio) << ',' << format_double(r.test_ratio)
        << ',' << format_double(r.train_ratio_randomized) << ','
        << format_double(r.test_ratio_randomized) << ','
        << format_double(r.covariance) << ','
        << format_double(r.ramp_objective) << ','
        << format_double(r.hinge_objective) << ',' << note << '\n';
  }
}

ChurnData generate_churn_data(const ChurnConfig& config) {
  ChurnData d;
  std::mt19937_64 rng(derive_seed(config.seed, 0));
  std::vector<int> unused_train, unused_test;
  generate_set(config.n_biased, true, rng, d.d1_train, d.d1_test, unused_train,
               unused_test);
  generate_set(config.n_labeled, false, rng, d.d2_train, d.d2_test,
               d.d2_train_baseline, d.d2_test_baseline);
  generate_set(config.n_unlabeled, false, rng, d.d3_train, d.d3_test,
               d.d3_train_baseline, d.d3_test_baseline);
  return d;
}

ChurnSummary run_experiment_churn_synthetic(const ChurnConfig& config) {
  if (config.taus.empty()) throw ConfigError("no churn targets");
  const ChurnData data = generate_churn_data(config);
  const ChurnSplit train = churn_split("train", data.d1_train, data.d2_train,
                                       data.d3_train, data.d3_train_baseline);
  const ChurnSplit test = churn_split("test", data.d1_test, data.d2_test,
                                      data.d3_test, data.d3_test_baseline);
  const DatasetCollection& ds = train.datasets;
  ChurnSummary summary;

  const LinearRateCombination churn =
      build_metric(MetricKind::kChurnRate, "d3", ds);
  const LinearRateCombination recall =
      build_metric(MetricKind::kRecall, "d2", ds);
  double min_tau = config.taus.front();
  for (double t : config.taus) min_tau = std::min(min_tau, t);
  if (!(min_tau > 0.0)) throw ConfigError("churn targets must be positive");

  double scale = 1.0;
  while (evaluate_combination(churn, ds, deployed_model(scale), RampRate{}) >
             min_tau / 4.0 &&
         scale < 1e6) {
    scale *= 2.0;
  }
  const LinearClassifier init = deployed_model(scale);
  summary.init_scale = scale;
  summary.deployed_recall =
      evaluate_combination(recall, ds, deployed_model(1.0), IndicatorRate{});
  summary.recall_target = evaluate_combination(recall, ds, init, RampRate{});

  const LinearRateCombination objective =
      churn_objective(ds, data.d2_train.size());
  const RateConstraint recall_constraint = make_constraint(
      recall.scaled(-1.0), -summary.recall_target, "recall");

  MmOptions options;
  options.iterations = config.iterations;
  options.eps = config.eps;
  options.saddle.svm.seed = derive_seed(config.seed, 1);

  const auto train_with = [&](std::vector<RateConstraint> constraints,
                              std::string& note) {
    const ConstrainedProblem problem(ds, objective, std::move(constraints),
                                     config.lambda, config.multiplier_cap);
    const MmResult mm = majorize_minimize(problem, init, options);
    note = audit_note(mm.trace);
    for (const std::string& w : mm.warnings) note += w + ";";
    return mm.classifier;
  };

  struct Trained {
    std::string method;
    double tau;
    LinearClassifier clf;
    std::string note;
  };
  std::vector<std::function<Trained()>> tasks;
  tasks.push_back([&] {
    Trained t{"recall_only", 1.0, {}, ""};
    t.clf = train_with({recall_constraint}, t.note);
    return t;
  });
  for (double tau : config.taus) {
    tasks.push_back([&, tau] {
      Trained t{"constrained", tau, {}, ""};
      t.clf = train_with(
          {recall_constraint, make_constraint(churn, tau, "churn")}, t.note);
      return t;
    });
  }
  tasks.push_back([&] {
    Trained t{"thresholded_svm", 1.0, {}, ""};
    BaselineOptions o;
    o.svm.seed = derive_seed(config.seed, 2);
    const LinearClassifier svm =
        train_unconstrained_svm(ds, objective, config.lambda, o);
    t.clf = threshold_for_constraint(
        svm,
        make_constraint(recall.scaled(-1.0), -summary.deployed_recall,
                        "recall"),
        ds);
    return t;
  });
  const std::vector<Trained> trained = run_ordered(tasks, config.workers);

  const double recall_only_churn =
      evaluate_combination(churn, ds, trained.front().clf, RampRate{});
  std::uint64_t stream = 10;
  const auto add_rows = [&](const std::string& method, double tau,
                            const LinearClassifier& clf, bool active) {
    for (const ChurnSplit* split : {&train, &test}) {
      ChurnRow row = churn_row(method, tau, *split, clf, config.mc_draws,
                               derive_seed(config.seed, stream++));
      row.active = active;
      summary.rows.push_back(row);
    }
  };
  add_rows("deployed", 1.0, init, false);
  for (const Trained& t : trained) {
    const bool active =
        t.method == "constrained" && recall_only_churn > t.tau + 1e-9;
    add_rows(t.method, t.tau, t.clf, active);
    if (!t.note.empty()) {
      summary.warnings.push_back(t.method + " tau=" + format_double(t.tau) +
                                 ": " + t.note);
    }
  }
  return summary;
}

void write_churn_csv(std::ostream& out, const ChurnSummary& summary) {
  out << "method,tau,split,churn,churn_randomized,churn_mc,error,"
         "error_randomized,recall,recall_randomized,active\n";
  for (const ChurnRow& r : summary.rows) {
    out << r.method << ',' << format_double(r.tau) << ',' << r.split << ','
        << format_double(r.churn) << ',' << format_double(r.churn_randomized)
        << ',' << format_double(r.churn_mc) << ',' << format_double(r.error)
        << ',' << format_double(r.error_randomized) << ','
        << format_double(r.recall) << ',' << format_double(r.recall_randomized)
        << ',' << (r.active ? 1 : 0) << '\n';
  }
}

}  // namespace ratecon
