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

#include <Eigen/Core>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <type_traits>

#include "purigan/errors.hpp"

namespace purigan {

// Little-endian-native byte buffer writer for checkpoints. Doubles are
// stored as their raw 8-byte representation so round trips are bitwise.
class BinaryWriter {
 public:
  template <typename T>
    requires std::is_arithmetic_v<T>
  void put(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    data_.append(buf, sizeof(T));
  }
  void put_string(std::string_view s) {
    put<std::uint64_t>(s.size());
    data_.append(s.data(), s.size());
  }
  void put_matrix(const Eigen::MatrixXd& m) {
    put<std::int64_t>(m.rows());
    put<std::int64_t>(m.cols());
    data_.append(reinterpret_cast<const char*>(m.data()),
                 sizeof(double) * static_cast<std::size_t>(m.size()));
  }
  void put_vector(const Eigen::VectorXd& v) {
    put<std::int64_t>(v.size());
    data_.append(reinterpret_cast<const char*>(v.data()),
                 sizeof(double) * static_cast<std::size_t>(v.size()));
  }
  const std::string& data() const { return data_; }

 private:
  std::string data_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string_view data) : data_(data) {}

  template <typename T>
    requires std::is_arithmetic_v<T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint64_t>();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  Eigen::MatrixXd get_matrix() {
    const auto rows = get<std::int64_t>();
    const auto cols = get<std::int64_t>();
    if (rows < 0 || cols < 0 || rows > (1 << 24) || cols > (1 << 24)) {
      throw LoadError("corrupt matrix header");
    }
    Eigen::MatrixXd m(rows, cols);
    const auto bytes = sizeof(double) * static_cast<std::size_t>(m.size());
    need(bytes);
    std::memcpy(m.data(), data_.data() + pos_, bytes);
    pos_ += bytes;
    return m;
  }
  Eigen::VectorXd get_vector() {
    const auto n = get<std::int64_t>();
    if (n < 0 || n > (1 << 24)) throw LoadError("corrupt vector header");
    Eigen::VectorXd v(n);
    const auto bytes = sizeof(double) * static_cast<std::size_t>(n);
    need(bytes);
    std::memcpy(v.data(), data_.data() + pos_, bytes);
    pos_ += bytes;
    return v;
  }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw LoadError("unexpected end of data");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

// FNV-1a, used as the checkpoint integrity checksum.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace purigan
