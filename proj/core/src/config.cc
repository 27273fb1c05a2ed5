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

#include "ratecon/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ratecon/errors.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    return parse_double(trim(text));
  } catch (const std::invalid_argument&) {
    throw ConfigError(what + ": bad number '" + text + "'");
  }
}

class Section {
 public:
  Section(const pt::ptree& tree, std::string name)
      : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> get(const std::string& key) {
    used_.insert(key);
    const auto child = tree_.get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return trim(child->data());
  }

  std::string require(const std::string& key) {
    auto value = get(key);
    if (!value || value->empty()) {
      throw ConfigError("[" + name_ + "] missing key '" + key + "'");
    }
    return *value;
  }

  std::optional<double> number(const std::string& key) {
    const auto value = get(key);
    if (!value) return std::nullopt;
    return to_double(*value, where(key));
  }

  std::optional<std::uint64_t> count(const std::string& key) {
    const auto value = get(key);
    if (!value) return std::nullopt;
    try {
      std::size_t used = 0;
      const unsigned long long n = std::stoull(*value, &used);
      if (used != value->size() || value->front() == '-') {
        throw std::invalid_argument("");
      }
      return n;
    } catch (const std::exception&) {
      throw ConfigError(where(key) + ": expected a nonnegative integer, got '" +
                        *value + "'");
    }
  }

  std::optional<bool> flag(const std::string& key) {
    const auto value = get(key);
    if (!value) return std::nullopt;
    if (*value == "true" || *value == "1" || *value == "yes") return true;
    if (*value == "false" || *value == "0" || *value == "no") return false;
    throw ConfigError(where(key) + ": expected true or false");
  }

  std::vector<double> numbers(const std::string& key) {
    std::vector<double> out;
    const auto value = get(key);
    if (!value) return out;
    for (const std::string& item : split_list(*value, ',')) {
      out.push_back(to_double(item, where(key)));
    }
    return out;
  }

  std::string where(const std::string& key) const {
    return "[" + name_ + "] " + key;
  }

  // Throws on keys never asked for.
  void finish() const {
    for (const auto& [key, child] : tree_) {
      if (!used_.count(key)) {
        throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
      }
    }
  }

 private:
  const pt::ptree& tree_;
  std::string name_;
  std::set<std::string> used_;
};

pt::ptree parse_ini(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " +
                      e.message());
  }
  for (const auto& [key, child] : tree) {
    if (child.empty() && !child.data().empty()) {
      throw ConfigError("key '" + key + "' outside of any section");
    }
  }
  return tree;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value,
                              const std::string& what) {
  std::filesystem::path p(value);
  if (p.is_relative()) p = base / p;
  if (!std::filesystem::exists(p)) {
    throw ConfigError(what + ": file not found: " + p.string());
  }
  return p;
}

std::optional<std::filesystem::path> resolve_optional(
    const std::filesystem::path& base, Section& s, const std::string& key) {
  const auto value = s.get(key);
  if (!value || value->empty()) return std::nullopt;
  return resolve(base, *value, s.where(key));
}

template <typename T, typename Parse>
T parse_enum(Section& s, const std::string& key, T fallback, Parse parse) {
  const auto value = s.get(key);
  if (!value) return fallback;
  const auto parsed = parse(*value);
  if (!parsed) {
    throw ConfigError(s.where(key) + ": unknown value '" + *value + "'");
  }
  return *parsed;
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "at_least") return Direction::kAtLeast;
  if (text == "at_most") return Direction::kAtMost;
  return std::nullopt;
}

std::optional<FairnessForm> parse_form(std::string_view text) {
  if (text == "kappa") return FairnessForm::kScaledByKappa;
  if (text == "inverse_kappa") return FairnessForm::kScaledByInverseKappa;
  return std::nullopt;
}

std::optional<ConstraintType> parse_constraint_type(std::string_view text) {
  if (text == "bound") return ConstraintType::kBound;
  if (text == "ratio") return ConstraintType::kRatio;
  if (text == "fairness") return ConstraintType::kFairness;
  return std::nullopt;
}

MetricExpr expr_key(Section& s, const std::string& key) {
  try {
    return parse_metric_expr(s.require(key));
  } catch (const ConfigError& e) {
    throw ConfigError(s.where(key) + ": " + e.what());
  }
}

ConstraintConfig parse_constraint(Section& s, const std::string& name) {
  ConstraintConfig c;
  c.name = name;
  c.type = parse_enum(s, "type", ConstraintType::kBound, parse_constraint_type);
  switch (c.type) {
    case ConstraintType::kBound:
      c.metric = expr_key(s, "metric");
      c.at_most = s.number("at_most");
      c.at_least = s.number("at_least");
      if (c.at_most.has_value() == c.at_least.has_value()) {
        throw ConfigError("[constraint " + name +
                          "] needs exactly one of at_most, at_least");
      }
      break;
    case ConstraintType::kRatio:
      c.numerator = expr_key(s, "numerator");
      c.denominator = expr_key(s, "denominator");
      c.ratio = s.number("ratio").value_or(1.0);
      c.direction = parse_enum(s, "direction", Direction::kAtLeast,
                               parse_direction);
      break;
    case ConstraintType::kFairness:
      c.group_a = s.require("group_a");
      c.group_b = s.require("group_b");
      c.kappa = s.number("kappa").value_or(0.8);
      c.form = parse_enum(s, "form", FairnessForm::kScaledByKappa, parse_form);
      if (const auto label = s.get("label")) {
        if (*label == "+" || *label == "+1" || *label == "1") {
          c.label = 1;
        } else if (*label == "-" || *label == "-1") {
          c.label = -1;
        } else {
          throw ConfigError(s.where("label") + ": expected + or -");
        }
      }
      break;
  }
  s.finish();
  return c;
}

std::optional<double> parse_lambda(Section& s) {
  const auto value = s.get("lambda");
  if (!value || *value == "1/n") return std::nullopt;
  const double lambda = to_double(*value, s.where("lambda"));
  if (!(lambda > 0.0)) throw ConfigError(s.where("lambda") + " must be > 0");
  return lambda;
}

}  // namespace

MetricExpr parse_metric_expr(const std::string& text) {
  MetricExpr expr;
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  if (s.empty()) throw ConfigError("empty metric expression");
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (!expr.empty()) {
      throw ConfigError("expected + or - in '" + text + "'");
    }
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      // Exponents such as 1e-3 belong to the coefficient.
      if ((s[end] == 'e' || s[end] == 'E') && end + 1 < s.size() &&
          (s[end + 1] == '-' || s[end + 1] == '+') && end > i &&
          std::isdigit(static_cast<unsigned char>(s[end - 1])) &&
          s.find('*', i) != std::string::npos && s.find('*', i) > end) {
        end += 2;
        continue;
      }
      ++end;
    }
    std::string term = s.substr(i, end - i);
    i = end;
    if (term.empty()) throw ConfigError("empty term in '" + text + "'");
    MetricTerm t;
    t.coefficient = sign;
    const std::size_t star = term.find('*');
    if (star != std::string::npos) {
      t.coefficient *= to_double(term.substr(0, star), "metric coefficient");
      term = term.substr(star + 1);
    }
    const std::size_t at = term.find('@');
    if (at != std::string::npos) {
      t.group = term.substr(at + 1);
      if (t.group->empty()) throw ConfigError("empty group in '" + text + "'");
      term = term.substr(0, at);
    }
    const auto kind = parse_metric_kind(term);
    if (!kind) throw ConfigError("unknown metric '" + term + "'");
    t.kind = *kind;
    expr.push_back(std::move(t));
  }
  return expr;
}

std::string format_metric_expr(const MetricExpr& expr) {
  std::string out;
  for (std::size_t k = 0; k < expr.size(); ++k) {
    const MetricTerm& t = expr[k];
    double c = t.coefficient;
    if (k > 0) {
      out += c < 0 ? " - " : " + ";
      c = std::abs(c);
    } else if (c < 0) {
      out += "-";
      c = -c;
    }
    if (c != 1.0) out += format_double(c) + " * ";
    out += metric_name(t.kind);
    if (t.group) out += "@" + *t.group;
  }
  return out;
}

RunConfig parse_run_config(const std::string& text,
                           const std::filesystem::path& base_dir) {
  const pt::ptree tree = parse_ini(text);
  RunConfig config;
  bool have_data = false;
  bool have_objective = false;
  for (const auto& [name, child] : tree) {
    Section s(child, name);
    if (name == "data") {
      have_data = true;
      DataConfig& d = config.data;
      d.train = resolve(base_dir, s.require("train"), s.where("train"));
      d.test = resolve_optional(base_dir, s, "test");
      if (const auto dim = s.count("dimension")) d.dimension = *dim;
      if (const auto g = s.count("group_feature")) {
        if (*g == 0) throw ConfigError(s.where("group_feature") + " is 1-based");
        d.group_feature = static_cast<std::uint32_t>(*g);
      }
      d.group_present = s.get("group_present").value_or(d.group_present);
      d.group_absent = s.get("group_absent").value_or(d.group_absent);
      d.train_groups = resolve_optional(base_dir, s, "train_groups");
      d.test_groups = resolve_optional(base_dir, s, "test_groups");
      d.train_baseline = resolve_optional(base_dir, s, "train_baseline");
      d.test_baseline = resolve_optional(base_dir, s, "test_baseline");
      if (d.group_feature && (d.train_groups || d.test_groups)) {
        throw ConfigError("[data] group_feature and group files are exclusive");
      }
    } else if (name == "objective") {
      have_objective = true;
      config.objective = expr_key(s, "metric");
    } else if (name.rfind("constraint ", 0) == 0) {
      const std::string cname = trim(name.substr(11));
      if (cname.empty()) throw ConfigError("constraint section without name");
      config.constraints.push_back(parse_constraint(s, cname));
      continue;
    } else if (name == "report") {
      if (const auto list = s.get("metrics")) {
        for (const std::string& item : split_list(*list, ',')) {
          config.report_metrics.push_back(parse_metric_expr(item));
        }
      }
    } else if (name == "solver") {
      SolverConfig& o = config.solver;
      o.lambda = parse_lambda(s);
      o.multiplier_cap = s.number("multiplier_cap").value_or(o.multiplier_cap);
      o.iterations = s.count("iterations").value_or(o.iterations);
      o.eps = s.number("eps").value_or(o.eps);
      o.feas_tol = s.number("feas_tol").value_or(o.feas_tol);
      o.early_stop = s.flag("early_stop").value_or(o.early_stop);
      o.cut_chooser =
          parse_enum(s, "cut_chooser", o.cut_chooser, parse_cut_chooser);
      o.bias_chooser =
          parse_enum(s, "bias_chooser", o.bias_chooser, parse_bias_chooser);
      o.bias_mode = parse_enum(s, "bias", o.bias_mode, parse_bias_mode);
      o.seed = s.count("seed").value_or(o.seed);
      o.max_saddle_iterations =
          s.count("max_saddle_iterations").value_or(o.max_saddle_iterations);
      o.max_bias_iterations =
          s.count("max_bias_iterations").value_or(o.max_bias_iterations);
      o.max_epochs = s.count("max_epochs").value_or(o.max_epochs);
      o.init_model = resolve_optional(base_dir, s, "init_model");
      if (!(o.eps > 0.0) || !(o.feas_tol >= 0.0) || !(o.multiplier_cap > 0.0) ||
          o.iterations == 0) {
        throw ConfigError("[solver] eps, multiplier_cap and iterations must "
                          "be positive");
      }
    } else if (name == "output") {
      OutputConfig& o = config.output;
      o.model = s.get("model").value_or(o.model);
      o.trace = s.get("trace").value_or(o.trace);
      o.report = s.get("report").value_or(o.report);
    } else if (name == "evaluate") {
      config.eval.mc_draws = s.count("mc_draws").value_or(0);
      config.eval.mc_seed = s.count("mc_seed").value_or(1);
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
    s.finish();
  }
  if (!have_data) throw ConfigError("missing [data] section");
  if (!have_objective) throw ConfigError("missing [objective] section");
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text(path), path.parent_path());
}

AdultConfig parse_adult_config(const std::string& text,
                               const std::filesystem::path& base_dir) {
  const pt::ptree tree = parse_ini(text);
  AdultConfig c;
  const auto section = tree.get_child_optional("experiment");
  if (!section || tree.size() != 1) {
    throw ConfigError("expected exactly one [experiment] section");
  }
  Section s(*section, "experiment");
  c.train = resolve(base_dir, s.require("train"), s.where("train"));
  c.test = resolve(base_dir, s.require("test"), s.where("test"));
  c.dimension = s.count("dimension").value_or(c.dimension);
  c.female_feature = static_cast<std::uint32_t>(
      s.count("female_feature").value_or(c.female_feature));
  c.male_feature = static_cast<std::uint32_t>(
      s.count("male_feature").value_or(c.male_feature));
  if (auto k = s.numbers("kappas"); !k.empty()) c.kappas = std::move(k);
  if (auto z = s.numbers("zafar_c"); !z.empty()) c.zafar_c = std::move(z);
  c.repeats = s.count("repeats").value_or(c.repeats);
  c.lambda = parse_lambda(s);
  c.bias_mode = parse_enum(s, "bias", c.bias_mode, parse_bias_mode);
  c.iterations = s.count("iterations").value_or(c.iterations);
  c.eps = s.number("eps").value_or(c.eps);
  c.multiplier_cap = s.number("multiplier_cap").value_or(c.multiplier_cap);
  c.seed = s.count("seed").value_or(c.seed);
  c.workers = s.count("workers").value_or(c.workers);
  c.thresholded = s.flag("thresholded").value_or(c.thresholded);
  c.zafar = s.flag("zafar").value_or(c.zafar);
  s.finish();
  if (c.female_feature == 0 || c.male_feature == 0 ||
      c.female_feature > c.dimension || c.male_feature > c.dimension) {
    throw ConfigError("[experiment] gender features must lie in 1..dimension");
  }
  if (c.repeats == 0) throw ConfigError("[experiment] repeats must be >= 1");
  return c;
}

AdultConfig load_adult_config(const std::filesystem::path& path) {
  return parse_adult_config(read_text(path), path.parent_path());
}

ChurnConfig parse_churn_config(const std::string& text) {
  const pt::ptree tree = parse_ini(text);
  ChurnConfig c;
  if (tree.empty()) return c;
  const auto section = tree.get_child_optional("experiment");
  if (!section || tree.size() != 1) {
    throw ConfigError("expected exactly one [experiment] section");
  }
  Section s(*section, "experiment");
  c.n_biased = s.count("n_biased").value_or(c.n_biased);
  c.n_labeled = s.count("n_labeled").value_or(c.n_labeled);
  c.n_unlabeled = s.count("n_unlabeled").value_or(c.n_unlabeled);
  if (auto t = s.numbers("taus"); !t.empty()) c.taus = std::move(t);
  c.lambda = s.number("lambda").value_or(c.lambda);
  c.iterations = s.count("iterations").value_or(c.iterations);
  c.eps = s.number("eps").value_or(c.eps);
  c.multiplier_cap = s.number("multiplier_cap").value_or(c.multiplier_cap);
  c.mc_draws = s.count("mc_draws").value_or(c.mc_draws);
  c.seed = s.count("seed").value_or(c.seed);
  c.workers = s.count("workers").value_or(c.workers);
  s.finish();
  if (c.n_biased < 10 || c.n_labeled < 10 || c.n_unlabeled < 10) {
    throw ConfigError("[experiment] dataset sizes must be >= 10");
  }
  return c;
}

ChurnConfig load_churn_config(const std::filesystem::path& path) {
  return parse_churn_config(read_text(path));
}

}  // namespace ratecon
