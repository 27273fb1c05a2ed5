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

#include "ratecon/trace.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "ratecon/errors.hpp"

namespace ratecon {

namespace {

constexpr std::array<std::pair<TraceLevel, std::string_view>, 4> kLevels = {{
    {TraceLevel::kMm, "mm"},
    {TraceLevel::kSaddle, "saddle"},
    {TraceLevel::kBias, "bias"},
    {TraceLevel::kSdca, "sdca"},
}};

std::string format_optional(double value) {
  return std::isnan(value) ? std::string() : format_double(value);
}

double parse_optional(std::string_view text) {
  return text.empty() ? TraceRow::kUnset : parse_double(text);
}

std::size_t parse_count(std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad count '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string_view level_name(TraceLevel level) {
  for (const auto& [l, text] : kLevels) {
    if (l == level) return text;
  }
  return "unknown";
}

std::optional<TraceLevel> parse_level(std::string_view name) {
  for (const auto& [l, text] : kLevels) {
    if (text == name) return l;
  }
  return std::nullopt;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "'");
  }
  return value;
}

std::string format_point(const std::vector<double>& v) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j > 0) out += ';';
    out += format_double(v[j]);
  }
  return out;
}

std::size_t SolverTrace::count(TraceLevel level) const {
  std::size_t n = 0;
  for (const TraceRow& r : rows_) n += r.level == level ? 1 : 0;
  return n;
}

const std::vector<std::string>& SolverTrace::columns() {
  static const std::vector<std::string> kColumns = {
      "level", "mm_iter", "saddle_iter", "bias_iter", "epoch",
      "lower", "upper",   "eps",         "point",     "value",
      "extra", "area",    "chooser",     "m"};
  return kColumns;
}

void SolverTrace::write_csv(std::ostream& out) const {
  const auto& cols = columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out << (c ? "," : "") << cols[c];
  }
  out << '\n';
  for (const TraceRow& r : rows_) {
    out << level_name(r.level) << ',' << r.mm_iter << ',' << r.saddle_iter
        << ',' << r.bias_iter << ',' << r.epoch << ','
        << format_optional(r.lower) << ',' << format_optional(r.upper) << ','
        << format_optional(r.eps) << ',' << r.point << ','
        << format_optional(r.value) << ',' << format_optional(r.extra) << ','
        << format_optional(r.area) << ',' << r.chooser << ','
        << r.constraints << '\n';
  }
}

SolverTrace SolverTrace::read_csv(std::istream& in) {
  SolverTrace trace;
  std::string line;
  std::size_t number = 0;
  const auto& cols = columns();
  if (!std::getline(in, line)) throw ParseError("missing trace header", 1);
  ++number;
  const auto header = split(line, ',');
  if (header.size() != cols.size() ||
      !std::equal(header.begin(), header.end(), cols.begin())) {
    throw ParseError("unexpected trace header", number);
  }
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != cols.size()) {
      throw ParseError("expected " + std::to_string(cols.size()) +
                           " fields, got " + std::to_string(f.size()),
                       number);
    }
    try {
      TraceRow r;
      const auto level = parse_level(f[0]);
      if (!level) throw std::invalid_argument("unknown level");
      r.level = *level;
      r.mm_iter = parse_count(f[1]);
      r.saddle_iter = parse_count(f[2]);
      r.bias_iter = parse_count(f[3]);
      r.epoch = parse_count(f[4]);
      r.lower = parse_optional(f[5]);
      r.upper = parse_optional(f[6]);
      r.eps = parse_optional(f[7]);
      r.point = std::string(f[8]);
      r.value = parse_optional(f[9]);
      r.extra = parse_optional(f[10]);
      r.area = parse_optional(f[11]);
      r.chooser = std::string(f[12]);
      r.constraints = parse_count(f[13]);
      trace.add(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), number);
    }
  }
  return trace;
}

}  // namespace ratecon
