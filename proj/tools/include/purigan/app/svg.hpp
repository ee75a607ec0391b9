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

#include <filesystem>
#include <string>
#include <vector>

#include "purigan/distributions.hpp"

namespace purigan::app {

struct ScatterLayer {
  std::string label;
  std::string color;  // any SVG color
  Points points;      // first two columns are plotted
};

// Writes a square scatter plot with a legend; coordinates are rounded to
// two decimals so the file is stable across runs.
void write_scatter_svg(const std::filesystem::path& path, const std::string& title,
                       const std::vector<ScatterLayer>& layers);

}  // namespace purigan::app
