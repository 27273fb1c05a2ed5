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

#ifndef RATECON_MODEL_IO_HPP_
#define RATECON_MODEL_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "ratecon/classifier.hpp"
#include "ratecon/svm.hpp"

namespace ratecon {

// Plain-text model file:
//
//   ratecon-model 1
//   dimension <d>
//   bias <b>
//   bias_mode <free|none>
//   weights
//   <w_0>
//   ...
//   <w_{d-1}>
//   end
//
// Numbers use the shortest decimal that round-trips.
struct Model {
  LinearClassifier classifier;
  BiasMode bias_mode = BiasMode::kFree;

  bool operator==(const Model&) const = default;
};

void write_model(std::ostream& out, const Model& model);
// Throws ParseError.
Model read_model(std::istream& in);

// Throw IoError when the file cannot be opened.
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace ratecon

#endif  // RATECON_MODEL_IO_HPP_
