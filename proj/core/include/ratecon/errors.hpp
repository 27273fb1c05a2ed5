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

#ifndef RATECON_ERRORS_HPP_
#define RATECON_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratecon {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kInfeasible = 3,
  kSolver = 4,
  kIo = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const = 0;
};

// Bad configuration, unknown dataset ids, invalid parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kConfig; }
};

// No starting point satisfies the constraints.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::size_t constraint,
                  double violation)
      : Error(what), constraint_(constraint), violation_(violation) {}
  ExitCode exit_code() const override { return ExitCode::kInfeasible; }
  std::size_t constraint() const { return constraint_; }
  double violation() const { return violation_; }

 private:
  std::size_t constraint_;
  double violation_;
};

class SolverError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kSolver; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kIo; }
};

// Malformed input text. Carries the 1-based line number.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ratecon

#endif  // RATECON_ERRORS_HPP_
