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

// Command-line front end: train, eval, experiment-adult, experiment-churn
// and audit.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ratecon/analysis.hpp"
#include "ratecon/config.hpp"
#include "ratecon/errors.hpp"
#include "ratecon/experiments.hpp"
#include "ratecon/runner.hpp"
#include "ratecon/trace.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string log_level = "info";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* opt = cmd->add_option("--config", flags.config, "Config file (INI)");
  if (config_required) opt->required();
  cmd->add_option("--seed", flags.seed, "Override the configured seed");
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--log-level", flags.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ratecon::IoError("cannot write " + path.string());
  out << text;
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ratecon::IoError("cannot create " + dir);
  return fs::path(dir);
}

int cmd_train(const CommonFlags& flags) {
  ratecon::RunConfig config = ratecon::load_run_config(flags.config);
  if (flags.seed) config.solver.seed = *flags.seed;
  spdlog::info("training on {}", config.data.train.string());
  const ratecon::TrainResult result =
      ratecon::run_train(config, prepare_out(flags.out));
  for (const std::string& w : result.mm.warnings) spdlog::warn("{}", w);
  if (!result.audit.passed) {
    for (const std::string& f : result.audit.failures) {
      spdlog::error("audit: {}", f);
    }
  }
  spdlog::info("final ramp objective {}",
               ratecon::format_double(result.mm.iterates.back().objective));
  std::cout << result.report;
  return 0;
}

int cmd_eval(const CommonFlags& flags, const std::string& model,
             std::optional<std::size_t> draws) {
  ratecon::RunConfig config = ratecon::load_run_config(flags.config);
  if (draws) config.eval.mc_draws = *draws;
  if (flags.seed) config.eval.mc_seed = *flags.seed;
  const std::string report = ratecon::run_eval(config, model);
  write_file(prepare_out(flags.out) / "eval_report.txt", report);
  std::cout << report;
  return 0;
}

int cmd_adult(const CommonFlags& flags) {
  ratecon::AdultConfig config = ratecon::load_adult_config(flags.config);
  if (flags.seed) config.seed = *flags.seed;
  spdlog::info("adult sweep: {} kappas, {} c values, {} repeats",
               config.kappas.size(), config.zafar_c.size(), config.repeats);
  const ratecon::AdultSummary summary = ratecon::run_experiment_adult(config);
  for (const std::string& w : summary.warnings) spdlog::warn("{}", w);
  const fs::path out = prepare_out(flags.out) / "adult.csv";
  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw ratecon::IoError("cannot write " + out.string());
  ratecon::write_adult_csv(csv, summary);
  spdlog::info("wrote {} rows to {}", summary.rows.size(), out.string());
  return 0;
}

int cmd_churn(const CommonFlags& flags) {
  ratecon::ChurnConfig config =
      flags.config.empty() ? ratecon::ChurnConfig{}
                           : ratecon::load_churn_config(flags.config);
  if (flags.seed) config.seed = *flags.seed;
  const ratecon::ChurnSummary summary =
      ratecon::run_experiment_churn_synthetic(config);
  for (const std::string& w : summary.warnings) spdlog::warn("{}", w);
  const fs::path out = prepare_out(flags.out) / "churn.csv";
  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw ratecon::IoError("cannot write " + out.string());
  ratecon::write_churn_csv(csv, summary);
  spdlog::info("deployed recall {}, recall target {}; wrote {}",
               ratecon::format_double(summary.deployed_recall),
               ratecon::format_double(summary.recall_target), out.string());
  return 0;
}

int cmd_audit(const std::string& trace_path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) throw ratecon::IoError("cannot open " + trace_path);
  const ratecon::AuditReport report =
      ratecon::audit_trace(ratecon::SolverTrace::read_csv(in));
  std::cout << report.to_string();
  return report.passed ? 0 : static_cast<int>(ratecon::ExitCode::kSolver);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ratecon: linear classifiers under rate constraints"};
  app.require_subcommand(1);

  CommonFlags train_flags, eval_flags, adult_flags, churn_flags, audit_flags;
  auto* train = app.add_subcommand("train", "Train a model from a config");
  add_common(train, train_flags, true);

  auto* eval = app.add_subcommand("eval", "Evaluate a model file");
  add_common(eval, eval_flags, true);
  std::string model_path;
  std::optional<std::size_t> draws;
  eval->add_option("--model", model_path, "Model file")
      ->required();
  eval->add_option("--mc-draws", draws, "Randomized-rule draws per dataset");

  auto* adult = app.add_subcommand("experiment-adult", "Adult fairness sweep");
  add_common(adult, adult_flags, true);

  auto* churn =
      app.add_subcommand("experiment-churn", "Synthetic churn sweep");
  add_common(churn, churn_flags, false);

  auto* audit = app.add_subcommand("audit", "Check a solver trace CSV");
  add_common(audit, audit_flags, false);
  std::string trace_path;
  audit->add_option("--trace", trace_path, "Trace CSV")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ratecon::ExitCode::kConfig);
  }

  const CommonFlags* active = &train_flags;
  if (*eval) active = &eval_flags;
  if (*adult) active = &adult_flags;
  if (*churn) active = &churn_flags;
  if (*audit) active = &audit_flags;
  spdlog::set_default_logger(spdlog::stderr_color_mt("ratecon"));
  spdlog::set_level(spdlog::level::from_str(active->log_level));

  try {
    if (*train) return cmd_train(train_flags);
    if (*eval) return cmd_eval(eval_flags, model_path, draws);
    if (*adult) return cmd_adult(adult_flags);
    if (*churn) return cmd_churn(churn_flags);
    return cmd_audit(trace_path);
  } catch (const ratecon::Error& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return static_cast<int>(ratecon::ExitCode::kSolver);
  }
}
