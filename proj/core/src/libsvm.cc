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

#include "ratecon/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "ratecon/errors.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

int parse_label(std::string_view text, std::size_t line) {
  if (text == "1" || text == "+1") return 1;
  if (text == "-1") return -1;
  throw ParseError("bad label '" + std::string(text) + "'", line);
}

}  // namespace

LibsvmData parse_libsvm(std::istream& in,
                        std::optional<std::size_t> dimension) {
  LibsvmData data;
  std::string line;
  std::size_t number = 0;
  std::size_t max_index = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto fields = tokens(line);
    if (fields.empty()) continue;
    data.labels.push_back(parse_label(fields[0], number));
    SparseVector x;
    x.reserve(fields.size() - 1);
    std::uint64_t previous = 0;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const std::string_view f = fields[k];
      const std::size_t colon = f.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("expected index:value, got '" + std::string(f) + "'",
                         number);
      }
      std::uint64_t index = 0;
      const auto [ptr, ec] =
          std::from_chars(f.data(), f.data() + colon, index);
      if (ec != std::errc() || ptr != f.data() + colon || index == 0 ||
          index > 0xffffffffULL) {
        throw ParseError("bad index in '" + std::string(f) + "'", number);
      }
      if (index <= previous) {
        throw ParseError("indices must be strictly increasing", number);
      }
      previous = index;
      double value = 0.0;
      try {
        value = parse_double(f.substr(colon + 1));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad value in '" + std::string(f) + "'", number);
      }
      if (!std::isfinite(value)) {
        throw ParseError("non-finite value in '" + std::string(f) + "'",
                         number);
      }
      if (dimension && index > *dimension) {
        throw ParseError("index " + std::to_string(index) +
                             " exceeds dimension " + std::to_string(*dimension),
                         number);
      }
      max_index = std::max<std::size_t>(max_index, index);
      x.push_back({static_cast<std::uint32_t>(index - 1), value});
    }
    data.features.push_back(std::move(x));
  }
  if (in.bad()) throw IoError("read error");
  data.dimension = dimension.value_or(max_index);
  return data;
}

LibsvmData read_libsvm_file(const std::filesystem::path& path,
                            std::optional<std::size_t> dimension) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_libsvm(in, dimension);
  } catch (const ParseError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_libsvm(std::ostream& out, const LibsvmData& data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (data.labels[i] > 0 ? "+1" : "-1");
    for (const Feature& f : data.features[i]) {
      out << ' ' << (f.index + 1) << ':' << format_double(f.value);
    }
    out << '\n';
  }
}

}  // namespace ratecon
