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

#ifndef STRATDP_SVG_HPP_
#define STRATDP_SVG_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stratdp {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 480;
};

// Minimal dependency-free line chart: axes, ticks, one polyline per series,
// and a legend. Non-finite points (and non-positive ones under log axes) are
// dropped from the polyline.
void WriteLineChart(const std::string& path, const SvgChartOptions& options,
                    std::span<const SvgSeries> series);

}  // namespace stratdp

#endif  // STRATDP_SVG_HPP_
