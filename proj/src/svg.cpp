// Copyright 2026 The BanditBench Authors.
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

#include "bandit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bandit/errors.hpp"

namespace bandit {
namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct AxisScale {
  double lo = 0.0, hi = 1.0;
  double px(double v, double px_lo, double px_hi) const {
    const double f = (v - lo) / (hi - lo);
    return px_lo + f * (px_hi - px_lo);
  }
};

// Round tick step to the 1-2-5 ladder.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(target_ticks, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0})
    if (raw <= mult * mag * (1.0 + 1e-12)) return mult * mag;
  return 10.0 * mag;
}

std::string fmt_tick(double v) {
  char buf[32];
  if (v == 0.0)
    std::snprintf(buf, sizeof(buf), "0");
  else if (std::abs(v) >= 1e5 || std::abs(v) < 1e-3)
    std::snprintf(buf, sizeof(buf), "%.1e", v);
  else
    std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series) {
  AxisScale xs, ys;
  xs.lo = ys.lo = std::numeric_limits<double>::infinity();
  xs.hi = ys.hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double half = i < s.band.size() ? s.band[i] : 0.0;
      xs.lo = std::min(xs.lo, s.x[i]);
      xs.hi = std::max(xs.hi, s.x[i]);
      ys.lo = std::min(ys.lo, s.y[i] - half);
      ys.hi = std::max(ys.hi, s.y[i] + half);
    }
  }
  if (!std::isfinite(xs.lo)) {
    xs = {0.0, 1.0};
    ys = {0.0, 1.0};
  }
  if (xs.hi <= xs.lo) xs.hi = xs.lo + 1.0;
  ys.lo = std::min(ys.lo, 0.0);
  if (ys.hi <= ys.lo) ys.hi = ys.lo + 1.0;
  ys.hi += 0.05 * (ys.hi - ys.lo);

  const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
  const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n";

  // Axes and ticks.
  const double x_step = nice_step(xs.hi - xs.lo, 6);
  const double y_step = nice_step(ys.hi - ys.lo, 6);
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double v = std::ceil(xs.lo / x_step) * x_step; v <= xs.hi + 1e-9 * x_step;
       v += x_step) {
    const double px = xs.px(v, px0, px1);
    out << "<line x1=\"" << px << "\" y1=\"" << py0 << "\" x2=\"" << px
        << "\" y2=\"" << py1 << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << py0 + 16
        << "\" text-anchor=\"middle\">" << fmt_tick(v) << "</text>\n";
  }
  for (double v = std::ceil(ys.lo / y_step) * y_step; v <= ys.hi + 1e-9 * y_step;
       v += y_step) {
    const double py = ys.px(v, py0, py1);
    out << "<line x1=\"" << px0 << "\" y1=\"" << py << "\" x2=\"" << px1
        << "\" y2=\"" << py << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << px0 - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << fmt_tick(v) << "</text>\n";
  }
  out << "</g>\n";
  out << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1
      << "\" y2=\"" << py0 << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0
      << "\" y2=\"" << py1 << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << escape_xml(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (py0 + py1) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (py0 + py1) / 2 << ")\">"
      << escape_xml(y_label) << "</text>\n";

  // Bands first so lines draw on top of them.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.band.size() != s.x.size() || s.x.empty()) continue;
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<path fill=\"" << color << "\" fill-opacity=\"0.15\" "
        << "stroke=\"none\" d=\"M";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << (i ? " L" : "") << xs.px(s.x[i], px0, px1) << " "
          << ys.px(s.y[i] + s.band[i], py0, py1);
    for (std::size_t i = s.x.size(); i-- > 0;)
      out << " L" << xs.px(s.x[i], px0, px1) << " "
          << ys.px(s.y[i] - s.band[i], py0, py1);
    out << " Z\"/>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.x.empty()) continue;
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << xs.px(s.x[i], px0, px1) << "," << ys.px(s.y[i], py0, py1) << " ";
    out << "\"/>\n";
  }

  // Legend, top-left inside the plot area.
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = py1 + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    if (series[si].x.empty()) continue;
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<line x1=\"" << px0 + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << px0 + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2.2\"/>\n";
    out << "<text x=\"" << px0 + 40 << "\" y=\"" << ly << "\">"
        << escape_xml(series[si].label) << "</text>\n";
    ly += 17;
  }
  out << "</g>\n</svg>\n";

  std::ofstream file(path);
  if (!file) throw IoError("cannot write SVG: " + path);
  file << out.str();
  if (!file) throw IoError("failed writing SVG: " + path);
}

}  // namespace bandit
