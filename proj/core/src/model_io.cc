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

#include "ratecon/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "ratecon/errors.hpp"
#include "ratecon/trace.hpp"

namespace ratecon {

namespace {

constexpr const char* kMagic = "ratecon-model 1";

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // "<key> <value>"
  std::string field(const std::string& key) {
    const std::string line = next();
    if (line.rfind(key + " ", 0) != 0) fail("expected '" + key + "'");
    return line.substr(key.size() + 1);
  }

  double number(const std::string& text) {
    try {
      return parse_double(text);
    } catch (const std::invalid_argument&) {
      fail("bad number '" + text + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("model: " + what, number_ + 1);
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const Model& model) {
  out << kMagic << '\n'
      << "dimension " << model.classifier.dimension() << '\n'
      << "bias " << format_double(model.classifier.bias) << '\n'
      << "bias_mode " << bias_mode_name(model.bias_mode) << '\n'
      << "weights\n";
  for (double w : model.classifier.weights) out << format_double(w) << '\n';
  out << "end\n";
}

Model read_model(std::istream& in) {
  LineReader reader(in);
  if (reader.next() != kMagic) reader.fail("missing header '" +
                                           std::string(kMagic) + "'");
  Model model;
  const std::string dim_text = reader.field("dimension");
  std::size_t dimension = 0;
  try {
    std::size_t used = 0;
    dimension = std::stoul(dim_text, &used);
    if (used != dim_text.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    reader.fail("bad dimension '" + dim_text + "'");
  }
  model.classifier.bias = reader.number(reader.field("bias"));
  const auto mode = parse_bias_mode(reader.field("bias_mode"));
  if (!mode) reader.fail("unknown bias mode");
  model.bias_mode = *mode;
  if (reader.next() != "weights") reader.fail("expected 'weights'");
  model.classifier.weights.reserve(dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    model.classifier.weights.push_back(reader.number(reader.next()));
  }
  if (reader.next() != "end") reader.fail("expected 'end'");
  if (!model.classifier.is_finite()) reader.fail("non-finite parameter");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_model(out, model);
  if (!out) throw IoError("write failed: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_model(in);
  } catch (const ParseError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace ratecon
