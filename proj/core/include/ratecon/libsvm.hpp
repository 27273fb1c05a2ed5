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

#ifndef RATECON_LIBSVM_HPP_
#define RATECON_LIBSVM_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ratecon/dataset.hpp"

namespace ratecon {

struct LibsvmData {
  std::vector<int> labels;  // +1 or -1
  std::vector<SparseVector> features;
  std::size_t dimension = 0;

  std::size_t size() const { return labels.size(); }
};

// "<label> <index>:<value> ..." per line, 1-based strictly increasing
// indices, blank lines skipped. Labels are 1, +1 or -1. The dimension is the
// largest index unless given. Throws ParseError with the line number.
LibsvmData parse_libsvm(std::istream& in,
                        std::optional<std::size_t> dimension = std::nullopt);
// Throws IoError if the file cannot be opened.
LibsvmData read_libsvm_file(const std::filesystem::path& path,
                            std::optional<std::size_t> dimension = std::nullopt);

// Canonical form: "+1"/"-1", shortest round-trip values.
void write_libsvm(std::ostream& out, const LibsvmData& data);

}  // namespace ratecon

#endif  // RATECON_LIBSVM_HPP_
