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


#include "core/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ordhc {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<PlotSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.mean[k])) continue;
      const double sd = k < s.stddev.size() ? s.stddev[k] : 0.0;
      x_lo = std::min(x_lo, s.x[k]);
      x_hi = std::max(x_hi, s.x[k]);
      y_lo = std::min(y_lo, s.mean[k] - sd);
      y_hi = std::max(y_hi, s.mean[k] + sd);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0;
    x_hi = 1;
    y_lo = 0;
    y_hi = 1;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">"
      << Escape(title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4;
    const double yv = y_lo + (y_hi - y_lo) * t / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << Num(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">" << Num(yv) << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\""
        << py(yv) << "\" y2=\"" << py(yv)
        << "\" stroke=\"#ddd\" stroke-dasharray=\"3,3\"/>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\">" << Escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const PlotSeries& ser = series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < ser.x.size(); ++k) {
      if (std::isfinite(ser.mean[k])) idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ser.x[a] < ser.x[b]; });
    if (!ser.stddev.empty() && idx.size() > 1) {
      out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" points=\"";
      for (std::size_t k : idx) {
        out << px(ser.x[k]) << ',' << py(ser.mean[k] + ser.stddev[k]) << ' ';
      }
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        out << px(ser.x[*it]) << ',' << py(ser.mean[*it] - ser.stddev[*it]) << ' ';
      }
      out << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k : idx) out << px(ser.x[k]) << ',' << py(ser.mean[k]) << ' ';
    out << "\"/>\n";
    for (std::size_t k : idx) {
      out << "<circle cx=\"" << px(ser.x[k]) << "\" cy=\"" << py(ser.mean[k])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << kWidth - kRight + 12 << "\" x2=\""
        << kWidth - kRight + 32 << "\" y1=\"" << ly << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\">"
        << Escape(ser.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ordhc
