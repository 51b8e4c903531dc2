//
// Copyright 2026 The StratDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "stratdp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "stratdp/errors.hpp"

namespace stratdp {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#17becf", "#7f7f7f"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

void WriteLineChart(const std::string& path, const SvgChartOptions& options,
                    std::span<const SvgSeries> series) {
  const double margin_left = 70.0;
  const double margin_right = 20.0;
  const double margin_top = 36.0;
  const double margin_bottom = 52.0;
  const double plot_w = options.width - margin_left - margin_right;
  const double plot_h = options.height - margin_top - margin_bottom;

  auto usable = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if (options.log_x && !(x > 0.0)) return false;
    if (options.log_y && !(y > 0.0)) return false;
    return true;
  };
  auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return options.log_y ? std::log10(y) : y; };

  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x;
  double min_y = min_x;
  double max_y = -min_x;
  for (const SvgSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      min_x = std::min(min_x, tx(x));
      max_x = std::max(max_x, tx(x));
      min_y = std::min(min_y, ty(y));
      max_y = std::max(max_y, ty(y));
    }
  }
  if (!(min_x <= max_x)) {  // no plottable points
    min_x = 0.0;
    max_x = 1.0;
    min_y = 0.0;
    max_y = 1.0;
  }
  if (max_x - min_x < 1e-12) {
    min_x -= 0.5;
    max_x += 0.5;
  }
  if (max_y - min_y < 1e-12) {
    min_y -= 0.5;
    max_y += 0.5;
  }

  auto px = [&](double x) {
    return margin_left + (tx(x) - min_x) / (max_x - min_x) * plot_w;
  };
  auto py = [&](double y) {
    return margin_top + (1.0 - (ty(y) - min_y) / (max_y - min_y)) * plot_h;
  };

  std::ofstream out(path);
  if (!out) {
    throw IoError("WriteLineChart: cannot open '" + path + "' for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << options.title << "</text>\n";

  // Axes.
  out << "<line x1=\"" << Num(margin_left) << "\" y1=\"" << Num(margin_top)
      << "\" x2=\"" << Num(margin_left) << "\" y2=\""
      << Num(margin_top + plot_h) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << Num(margin_left) << "\" y1=\""
      << Num(margin_top + plot_h) << "\" x2=\"" << Num(margin_left + plot_w)
      << "\" y2=\"" << Num(margin_top + plot_h) << "\" stroke=\"black\"/>\n";

  // Ticks: 5 per axis at even positions in transformed space.
  for (int i = 0; i <= 4; ++i) {
    const double fx = min_x + (max_x - min_x) * i / 4.0;
    const double fy = min_y + (max_y - min_y) * i / 4.0;
    const double x_val = options.log_x ? std::pow(10.0, fx) : fx;
    const double y_val = options.log_y ? std::pow(10.0, fy) : fy;
    const double x_pos = margin_left + plot_w * i / 4.0;
    const double y_pos = margin_top + plot_h * (1.0 - i / 4.0);
    out << "<line x1=\"" << Num(x_pos) << "\" y1=\"" << Num(margin_top + plot_h)
        << "\" x2=\"" << Num(x_pos) << "\" y2=\""
        << Num(margin_top + plot_h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << Num(x_pos) << "\" y=\""
        << Num(margin_top + plot_h + 18) << "\" text-anchor=\"middle\" "
        << "font-size=\"10\">" << Short(x_val) << "</text>\n";
    out << "<line x1=\"" << Num(margin_left - 5) << "\" y1=\"" << Num(y_pos)
        << "\" x2=\"" << Num(margin_left) << "\" y2=\"" << Num(y_pos)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << Num(margin_left - 8) << "\" y=\"" << Num(y_pos + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << Short(y_val)
        << "</text>\n";
  }
  out << "<text x=\"" << Num(margin_left + plot_w / 2) << "\" y=\""
      << Num(options.height - 12) << "\" text-anchor=\"middle\" "
      << "font-size=\"12\">" << options.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << Num(margin_top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << Num(margin_top + plot_h / 2) << ")\">" << options.y_label
      << "</text>\n";

  // Series polylines and legend.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[s].points) {
      if (!usable(x, y)) continue;
      out << Num(px(x)) << ',' << Num(py(y)) << ' ';
    }
    out << "\"/>\n";
    const double ly = margin_top + 14.0 * static_cast<double>(s);
    out << "<line x1=\"" << Num(margin_left + plot_w - 120) << "\" y1=\""
        << Num(ly) << "\" x2=\"" << Num(margin_left + plot_w - 100)
        << "\" y2=\"" << Num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << Num(margin_left + plot_w - 96) << "\" y=\""
        << Num(ly + 3) << "\" font-size=\"10\">" << series[s].label
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out.good()) {
    throw IoError("WriteLineChart: write failed for '" + path + "'");
  }
}

}  // namespace stratdp
