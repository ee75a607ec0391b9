// Copyright 2026 The PuriGAN Authors. All Rights Reserved.
//
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "purigan/distributions.hpp"

namespace purigan::io {

// Shortest round-trippable decimal form of a double ("%.17g").
std::string format_double(double v);

// Minimal CSV writer; fields are written as-is (no quoting is ever needed for
// the numeric tables this project emits).
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(const std::vector<std::string>& columns);
  CsvWriter& field(std::string_view s);
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
  CsvWriter& field(std::size_t v) { return field(static_cast<long long>(v)); }
  void end_row();
  // Flushes and reports write errors as std::runtime_error.
  void close();

 private:
  std::ofstream out_;
  bool first_in_row_ = true;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

// Points as CSV with header x1..xd.
void write_points_csv(const std::filesystem::path& path, const Points& pts);
Points read_points_csv(const std::filesystem::path& path);

// Single-column 0/1 label file with the given header.
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& labels,
                      std::string_view column = "is_target");
std::vector<std::uint8_t> read_labels_csv(const std::filesystem::path& path);

}  // namespace purigan::io
