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

#include "ratecon/runner.hpp"

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ratecon/errors.hpp"
#include "ratecon/random.hpp"
#include "ratecon/rates.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> read_groups(const std::filesystem::path& path,
                                     std::size_t expected) {
  std::vector<std::string> groups = read_lines(path);
  if (groups.size() != expected) {
    throw ConfigError(path.string() + ": " + std::to_string(groups.size()) +
                      " groups for " + std::to_string(expected) + " examples");
  }
  return groups;
}

std::vector<int> read_baseline(const std::filesystem::path& path,
                               std::size_t expected) {
  std::vector<int> out;
  std::size_t number = 0;
  for (const std::string& line : read_lines(path)) {
    ++number;
    if (line == "1" || line == "+1") {
      out.push_back(1);
    } else if (line == "-1") {
      out.push_back(-1);
    } else {
      throw IoError(path.string() + ": line " + std::to_string(number) +
                    ": expected +1 or -1");
    }
  }
  if (out.size() != expected) {
    throw ConfigError(path.string() + ": " + std::to_string(out.size()) +
                      " baseline labels for " + std::to_string(expected) +
                      " examples");
  }
  return out;
}

std::vector<std::string> feature_groups(const LibsvmData& data,
                                        const DataConfig& config) {
  std::vector<std::string> groups;
  const std::uint32_t index = *config.group_feature - 1;
  for (const SparseVector& x : data.features) {
    bool present = false;
    for (const Feature& f : x) {
      if (f.index == index && f.value != 0.0) present = true;
    }
    groups.push_back(present ? config.group_present : config.group_absent);
  }
  return groups;
}

Split load_split(const std::string& prefix, const std::filesystem::path& path,
                 const DataConfig& config,
                 const std::optional<std::filesystem::path>& groups_path,
                 const std::optional<std::filesystem::path>& baseline_path,
                 std::optional<std::size_t> dimension) {
  LibsvmData data = read_libsvm_file(path, dimension);
  std::vector<std::string> groups;
  if (config.group_feature) {
    if (*config.group_feature > data.dimension) {
      throw ConfigError("group_feature exceeds the data dimension");
    }
    groups = feature_groups(data, config);
  } else if (groups_path) {
    groups = read_groups(*groups_path, data.size());
  }
  std::vector<int> baseline;
  if (baseline_path) baseline = read_baseline(*baseline_path, data.size());
  return make_split(prefix, std::move(data), std::move(groups),
                    std::move(baseline));
}

void print_value_row(std::ostream& out, const std::string& label,
                     const LinearRateCombination& combo,
                     const DatasetCollection& datasets,
                     const LinearClassifier& clf, const EvalConfig& eval,
                     std::uint64_t stream, double bound, bool has_bound) {
  const double det = evaluate_combination(combo, datasets, clf, IndicatorRate{});
  const double ramp = evaluate_combination(combo, datasets, clf, RampRate{});
  out << label << ": indicator=" << format_double(det)
      << " ramp=" << format_double(ramp);
  if (eval.mc_draws > 0) {
    out << " randomized_mc="
        << format_double(randomized_estimate(
               combo, datasets, clf, eval.mc_draws,
               derive_seed(eval.mc_seed, stream)));
  }
  if (has_bound) out << " bound=" << format_double(bound);
  out << "\n";
}

}  // namespace

std::string group_prefix(const std::string& prefix, const std::string& group) {
  return prefix + "@" + group;
}

Split make_split(std::string prefix, LibsvmData data,
                 std::vector<std::string> groups, std::vector<int> baseline) {
  Split split;
  split.prefix = std::move(prefix);
  split.data = std::move(data);
  split.groups = std::move(groups);
  split.baseline = std::move(baseline);
  const std::size_t n = split.data.size();
  if (n == 0) throw ConfigError("split " + split.prefix + " has no examples");
  auto make_examples = [&](auto keep) {
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep(i)) continue;
      LabeledExample e;
      e.features = split.data.features[i];
      e.label = split.data.labels[i];
      if (!split.baseline.empty()) e.baseline = split.baseline[i];
      out.push_back(std::move(e));
    }
    return out;
  };
  split.datasets = partition_labeled_data(
      split.prefix, split.data.dimension,
      make_examples([](std::size_t) { return true; }));
  if (!split.groups.empty()) {
    const std::set<std::string> names(split.groups.begin(), split.groups.end());
    for (const std::string& g : names) {
      split.datasets.merge(partition_labeled_data(
          group_prefix(split.prefix, g), split.data.dimension,
          make_examples([&](std::size_t i) { return split.groups[i] == g; })));
    }
  }
  return split;
}

LoadedData load_data(const DataConfig& config) {
  LoadedData data{load_split("train", config.train, config, config.train_groups,
                             config.train_baseline, config.dimension),
                  std::nullopt};
  if (config.test) {
    const std::size_t dim = data.train.data.dimension;
    data.test = load_split("test", *config.test, config, config.test_groups,
                           config.test_baseline, dim);
  }
  return data;
}

LinearRateCombination build_expr(const MetricExpr& expr,
                                 const std::string& prefix,
                                 const DatasetCollection& datasets) {
  LinearRateCombination out;
  for (const MetricTerm& t : expr) {
    const std::string p = t.group ? group_prefix(prefix, *t.group) : prefix;
    out = out + build_metric(t.kind, p, datasets).scaled(t.coefficient);
  }
  return canonicalize(out, datasets);
}

RateConstraint build_constraint(const ConstraintConfig& config,
                                const std::string& prefix,
                                const DatasetCollection& datasets) {
  switch (config.type) {
    case ConstraintType::kBound: {
      const LinearRateCombination lhs =
          build_expr(config.metric, prefix, datasets);
      if (config.at_most) return make_constraint(lhs, *config.at_most, config.name);
      return make_constraint(lhs.scaled(-1.0), -*config.at_least, config.name);
    }
    case ConstraintType::kRatio:
      return build_ratio_constraint(build_expr(config.numerator, prefix, datasets),
                                    build_expr(config.denominator, prefix, datasets),
                                    config.ratio, config.direction, config.name);
    case ConstraintType::kFairness: {
      auto cell = [&](const std::string& group) {
        const std::string p = group_prefix(prefix, group);
        const std::string id =
            config.label ? partition::by_label(p, *config.label) : p;
        if (!datasets.contains(id)) {
          throw ConfigError("constraint " + config.name + ": no examples in " +
                            id);
        }
        return id;
      };
      return build_fairness_constraint(cell(config.group_a),
                                       cell(config.group_b), config.kappa,
                                       config.form, config.name);
    }
  }
  throw ConfigError("unknown constraint type");
}

double resolve_lambda(const SolverConfig& solver, std::size_t n_train) {
  return solver.lambda.value_or(1.0 / static_cast<double>(n_train));
}

MmOptions mm_options(const SolverConfig& solver) {
  MmOptions o;
  o.iterations = solver.iterations;
  o.eps = solver.eps;
  o.feas_tol = solver.feas_tol;
  o.early_stop = solver.early_stop;
  o.saddle.chooser = solver.cut_chooser;
  o.saddle.max_iterations = solver.max_saddle_iterations;
  o.saddle.svm.bias_mode = solver.bias_mode;
  o.saddle.svm.chooser = solver.bias_chooser;
  o.saddle.svm.seed = solver.seed;
  o.saddle.svm.max_bias_iterations = solver.max_bias_iterations;
  o.saddle.svm.max_epochs = solver.max_epochs;
  return o;
}

double randomized_estimate(const LinearRateCombination& combo,
                           const DatasetCollection& datasets,
                           const LinearClassifier& classifier,
                           std::size_t draws, std::uint64_t seed) {
  if (draws == 0) throw ConfigError("need at least one draw");
  double total = combo.constant;
  std::uint64_t stream = 0;
  for (const RateTerm& t : combo.terms) {
    const UnlabeledDataset& d = datasets.at(t.dataset);
    std::mt19937_64 rng(derive_seed(seed, stream++));
    std::size_t positives = 0;
    for (std::size_t k = 0; k < draws; ++k) {
      const std::size_t i = static_cast<std::size_t>(rng() % d.size());
      const double u = uniform01(rng);
      positives += randomized_predict(d.example(i), classifier, u) > 0 ? 1 : 0;
    }
    const double rate =
        static_cast<double>(positives) / static_cast<double>(draws);
    total += t.coefficient *
             (t.polarity == Polarity::kPositive ? rate : 1.0 - rate);
  }
  return total;
}

TrainResult train_model(const RunConfig& config, const LoadedData& data) {
  const Split& train = data.train;
  const double lambda = resolve_lambda(config.solver, train.data.size());
  std::vector<RateConstraint> constraints;
  for (const ConstraintConfig& c : config.constraints) {
    constraints.push_back(build_constraint(c, train.prefix, train.datasets));
  }
  const ConstrainedProblem problem(
      train.datasets, build_expr(config.objective, train.prefix, train.datasets),
      std::move(constraints), lambda, config.solver.multiplier_cap);

  LinearClassifier init;
  if (config.solver.init_model) {
    init = load_model(*config.solver.init_model).classifier;
    if (init.dimension() != problem.dimension()) {
      throw ConfigError("init_model dimension " +
                        std::to_string(init.dimension()) + " differs from " +
                        std::to_string(problem.dimension()));
    }
    if (config.solver.bias_mode == BiasMode::kNone) init.bias = 0.0;
  } else {
    init = find_initial_point(problem, config.solver.bias_mode,
                              config.solver.feas_tol);
  }

  TrainResult result;
  result.lambda = lambda;
  result.mm = majorize_minimize(problem, init, mm_options(config.solver));
  result.model = {result.mm.classifier, config.solver.bias_mode};
  result.generalization = generalization_report(problem);
  result.audit = audit_trace(result.mm.trace);

  std::ostringstream out;
  out << "ratecon train report\n"
      << "examples: " << train.data.size() << "\n"
      << "dimension: " << problem.dimension() << "\n"
      << "lambda: " << format_double(lambda) << "\n"
      << "constraints: " << problem.num_constraints() << "\n"
      << "mm iterates:\n";
  for (std::size_t t = 0; t < result.mm.iterates.size(); ++t) {
    const MmIterate& it = result.mm.iterates[t];
    out << "  " << t << ": ramp_objective=" << format_double(it.objective)
        << " max_violation=" << format_double(it.max_violation) << "\n";
  }
  out << "multipliers: " << format_point(result.mm.multipliers) << "\n";
  for (const std::string& w : result.mm.warnings) out << "warning: " << w << "\n";
  out << evaluation_report(config, data, result.model)
      << result.generalization.to_string() << result.audit.to_string();
  result.report = out.str();
  return result;
}

std::string evaluation_report(const RunConfig& config, const LoadedData& data,
                              const Model& model) {
  std::ostringstream out;
  std::vector<const Split*> splits = {&data.train};
  if (data.test) splits.push_back(&*data.test);
  std::uint64_t stream = 0;
  for (const Split* split : splits) {
    const LinearClassifier& clf = model.classifier;
    const DatasetCollection& ds = split->datasets;
    if (ds.dimension() != clf.dimension()) {
      throw ConfigError("model dimension " + std::to_string(clf.dimension()) +
                        " differs from data dimension " +
                        std::to_string(ds.dimension()));
    }
    out << "split " << split->prefix << " (" << split->data.size()
        << " examples)\n";
    print_value_row(out, "  objective " + format_metric_expr(config.objective),
                    build_expr(config.objective, split->prefix, ds), ds, clf,
                    config.eval, stream++, 0.0, false);
    for (const ConstraintConfig& c : config.constraints) {
      const RateConstraint rc = build_constraint(c, split->prefix, ds);
      print_value_row(out, "  constraint " + c.name, rc.lhs, ds, clf,
                      config.eval, stream++, rc.bound, true);
      if (c.type == ConstraintType::kFairness) {
        const auto rate = [&](const std::string& g, const RateKind& kind) {
          const std::string p = group_prefix(split->prefix, g);
          const std::string id = c.label ? partition::by_label(p, *c.label) : p;
          return rates(ds.at(id), clf, kind).positive;
        };
        out << "  fairness_ratio " << c.name << " (" << c.group_b << "/"
            << c.group_a << "): indicator="
            << format_double(rate(c.group_b, IndicatorRate{}) /
                             rate(c.group_a, IndicatorRate{}))
            << " ramp="
            << format_double(rate(c.group_b, RampRate{}) /
                             rate(c.group_a, RampRate{}))
            << "\n";
      }
    }
    for (const MetricExpr& m : config.report_metrics) {
      print_value_row(out, "  metric " + format_metric_expr(m),
                      build_expr(m, split->prefix, ds), ds, clf, config.eval,
                      stream++, 0.0, false);
    }
  }
  if (config.eval.mc_draws > 0) {
    out << "randomized draws per dataset: " << config.eval.mc_draws
        << " seed " << config.eval.mc_seed << "\n";
  }
  return out.str();
}

TrainResult run_train(const RunConfig& config,
                      const std::filesystem::path& out_dir) {
  const LoadedData data = load_data(config.data);
  TrainResult result = train_model(config, data);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());
  save_model(out_dir / config.output.model, result.model);
  {
    std::ofstream out(out_dir / config.output.trace, std::ios::binary);
    if (!out) throw IoError("cannot write trace");
    result.mm.trace.write_csv(out);
  }
  {
    std::ofstream out(out_dir / config.output.report, std::ios::binary);
    if (!out) throw IoError("cannot write report");
    out << result.report;
  }
  return result;
}

std::string run_eval(const RunConfig& config,
                     const std::filesystem::path& model_path) {
  const Model model = load_model(model_path);
  const std::size_t d = model.classifier.dimension();
  if (config.data.dimension && *config.data.dimension != d) {
    throw ConfigError("model dimension " + std::to_string(d) +
                      " differs from [data] dimension " +
                      std::to_string(*config.data.dimension));
  }
  DataConfig data_config = config.data;
  for (const auto& path : {std::optional(config.data.train), config.data.test}) {
    if (path && read_libsvm_file(*path).dimension > d) {
      throw ConfigError(path->string() + " has features beyond the model "
                        "dimension " + std::to_string(d));
    }
  }
  data_config.dimension = d;
  const LoadedData data = load_data(data_config);
  return "ratecon eval report\n" + evaluation_report(config, data, model);
}

}  // namespace ratecon
