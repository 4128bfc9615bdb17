// Copyright 2026 The ordhc Authors.
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


#ifndef ORDHC_CORE_SVG_PLOT_HPP_
#define ORDHC_CORE_SVG_PLOT_HPP_

#include <string>
#include <vector>

namespace ordhc {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> stddev;  // empty for no band
};

// Self-contained SVG line chart with one polyline per series and a shaded
// mean +/- std band.
std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<PlotSeries>& series);

}  // namespace ordhc

#endif  // ORDHC_CORE_SVG_PLOT_HPP_
