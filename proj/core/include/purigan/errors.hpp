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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace purigan {

// Invalid scalar argument or configuration value.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Index outside a distribution's support.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mismatched dimensions, support sizes or layer shapes.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A pool or dataset part cannot supply the requested number of points.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A non-finite value appeared. `layer()` is the offending layer index, or
// npos when the failure is not tied to a network layer.
class NumericError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NumericError(const std::string& what, std::size_t layer = npos)
      : std::runtime_error(what), layer_(layer) {}

  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

// All densities vanish at the evaluation point, so D* is undefined there.
class UndefinedPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Checkpoint or data file could not be decoded.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace purigan
