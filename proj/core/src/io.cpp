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

#include "purigan/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "purigan/errors.hpp"

namespace purigan::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) field(c);
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view s) {
  if (!first_in_row_) out_ << ',';
  out_ << s;
  first_in_row_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(long long v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_in_row_ = true;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw std::runtime_error("CSV write failed");
  out_.close();
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw LoadError(path.string() + ": missing header");
  return table;
}

void write_points_csv(const std::filesystem::path& path, const Points& pts) {
  CsvWriter w(path);
  std::vector<std::string> cols;
  for (Eigen::Index j = 0; j < pts.cols(); ++j) cols.push_back("x" + std::to_string(j + 1));
  w.header(cols);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    for (Eigen::Index j = 0; j < pts.cols(); ++j) w.field(pts(i, j));
    w.end_row();
  }
  w.close();
}

Points read_points_csv(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const auto d = static_cast<Eigen::Index>(table.header.size());
  if (d == 0) throw LoadError(path.string() + ": no coordinate columns");
  Points pts(static_cast<Eigen::Index>(table.rows.size()), d);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (static_cast<Eigen::Index>(table.rows[i].size()) != d) {
      throw LoadError(path.string() + ": ragged row " + std::to_string(i + 2));
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      try {
        pts(static_cast<Eigen::Index>(i), j) = std::stod(table.rows[i][j]);
      } catch (const std::exception&) {
        throw LoadError(path.string() + ": bad number at row " + std::to_string(i + 2));
      }
    }
  }
  return pts;
}

void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& labels,
                      std::string_view column) {
  CsvWriter w(path);
  w.header({std::string(column)});
  for (auto l : labels) {
    w.field(static_cast<long long>(l));
    w.end_row();
  }
  w.close();
}

std::vector<std::uint8_t> read_labels_csv(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  if (table.header.size() != 1) throw LoadError(path.string() + ": expected one column");
  std::vector<std::uint8_t> labels;
  labels.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.size() != 1 || (row[0] != "0" && row[0] != "1")) {
      throw LoadError(path.string() + ": labels must be 0 or 1");
    }
    labels.push_back(row[0] == "1" ? 1 : 0);
  }
  return labels;
}

}  // namespace purigan::io
