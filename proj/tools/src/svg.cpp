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

#include "purigan/app/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace purigan::app {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_scatter_svg(const std::filesystem::path& path, const std::string& title,
                       const std::vector<ScatterLayer>& layers) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& l : layers) {
    if (l.points.cols() < 2) throw std::invalid_argument("scatter needs 2-D points");
    for (Eigen::Index i = 0; i < l.points.rows(); ++i) {
      lo_x = std::min(lo_x, l.points(i, 0));
      hi_x = std::max(hi_x, l.points(i, 0));
      lo_y = std::min(lo_y, l.points(i, 1));
      hi_y = std::max(hi_y, l.points(i, 1));
    }
  }
  if (!(hi_x > lo_x)) { lo_x -= 1.0; hi_x += 1.0; }
  if (!(hi_y > lo_y)) { lo_y -= 1.0; hi_y += 1.0; }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double scale = (kSize - 2.0 * kMargin) / span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  auto px = [&](double x) { return kSize / 2.0 + (x - cx) * scale; };
  auto py = [&](double y) { return kSize / 2.0 - (y - cy) * scale; };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kSize) << "\" height=\""
      << fmt(kSize) << "\" viewBox=\"0 0 " << fmt(kSize) << ' ' << fmt(kSize) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kMargin) << "\" y=\"24\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape(title) << "</text>\n";
  for (const auto& l : layers) {
    out << "<g fill=\"" << l.color << "\" fill-opacity=\"0.45\">\n";
    for (Eigen::Index i = 0; i < l.points.rows(); ++i) {
      out << "<circle cx=\"" << fmt(px(l.points(i, 0))) << "\" cy=\"" << fmt(py(l.points(i, 1)))
          << "\" r=\"1.6\"/>\n";
    }
    out << "</g>\n";
  }
  double y = kSize - 12.0 - 16.0 * static_cast<double>(layers.size() - 1);
  for (const auto& l : layers) {
    out << "<circle cx=\"" << fmt(kMargin) << "\" cy=\"" << fmt(y - 4.0) << "\" r=\"4\" fill=\""
        << l.color << "\"/>\n";
    out << "<text x=\"" << fmt(kMargin + 10.0) << "\" y=\"" << fmt(y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(l.label) << "</text>\n";
    y += 16.0;
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace purigan::app
