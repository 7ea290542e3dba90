// Copyright 2026 The mpb Authors. All rights reserved.
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

#include "mpb/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mpb {

std::string FormatCsv(std::span<const SweepPoint> points) {
  if (points.empty()) throw std::invalid_argument("no sweep points to write");
  std::string out(kCsvHeader);
  out += "\n";
  char buf[512];
  for (const SweepPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%lld,%d,%llu\n",
                  p.delta, p.mean_regret, p.stderr_regret, p.reference,
                  static_cast<long long>(p.collisions), p.trials,
                  static_cast<unsigned long long>(p.seed_base));
    out += buf;
  }
  return out;
}

std::vector<SweepPoint> ParseCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("missing or unexpected CSV header");
  }
  std::vector<SweepPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepPoint p;
    long long collisions = 0;
    unsigned long long seed = 0;
    int used = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lld,%d,%llu%n", &p.delta,
                    &p.mean_regret, &p.stderr_regret, &p.reference, &collisions,
                    &p.trials, &seed, &used) != 7 ||
        used != static_cast<int>(line.size())) {
      throw std::invalid_argument("malformed CSV row: " + line);
    }
    p.collisions = collisions;
    p.seed_base = seed;
    points.push_back(p);
  }
  return points;
}

namespace {

struct Axis {
  double lo;
  double hi;
  double pixel_lo;
  double pixel_hi;

  double Map(double v) const {
    const double f = (std::log10(v) - std::log10(lo)) /
                     (std::log10(hi) - std::log10(lo));
    return pixel_lo + f * (pixel_hi - pixel_lo);
  }
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string FormatSvg(std::span<const SweepPoint> points,
                      std::span<const double> deltas) {
  if (points.empty()) throw std::invalid_argument("no sweep points to plot");
  constexpr double kWidth = 640;
  constexpr double kHeight = 480;
  constexpr double kMargin = 60;

  double x_lo = points.front().delta;
  double x_hi = points.front().delta;
  double y_lo = 1e300;
  double y_hi = 0;
  for (const SweepPoint& p : points) {
    x_lo = std::min(x_lo, p.delta);
    x_hi = std::max(x_hi, p.delta);
  }
  // Reference shape anchored to the measured value at the smallest gap.
  const SweepPoint& anchor = *std::min_element(
      points.begin(), points.end(),
      [](const SweepPoint& a, const SweepPoint& b) { return a.delta < b.delta; });
  const double scale =
      anchor.reference > 0 && anchor.mean_regret > 0
          ? anchor.mean_regret / anchor.reference
          : 1.0;
  std::vector<std::pair<double, double>> curve;
  constexpr int kSamples = 200;
  for (int i = 0; i <= kSamples; ++i) {
    const double d = x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / kSamples);
    const double clamped = std::clamp(d, deltas.back(), deltas.front());
    curve.emplace_back(d, scale * ParetoReference(deltas, clamped));
  }
  for (const SweepPoint& p : points) {
    const double lo = std::max(p.mean_regret - p.stderr_regret, 0.0);
    if (lo > 0) y_lo = std::min(y_lo, lo);
    if (p.mean_regret > 0) y_lo = std::min(y_lo, p.mean_regret);
    y_hi = std::max(y_hi, p.mean_regret + p.stderr_regret);
  }
  for (const auto& [d, v] : curve) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (!(y_lo < 1e300) || y_lo <= 0) y_lo = 1e-3;
  if (y_hi <= y_lo) y_hi = y_lo * 10;
  if (x_hi <= x_lo) x_hi = x_lo * 10;
  const Axis x{x_lo / 1.2, x_hi * 1.2, kMargin, kWidth - kMargin / 2};
  const Axis y{y_lo / 1.5, y_hi * 1.5, kHeight - kMargin, kMargin / 2};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + Num(kMargin) + "\" y1=\"" + Num(kHeight - kMargin) +
         "\" x2=\"" + Num(kWidth - kMargin / 2) + "\" y2=\"" +
         Num(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Num(kMargin) + "\" y1=\"" + Num(kHeight - kMargin) +
         "\" x2=\"" + Num(kMargin) + "\" y2=\"" + Num(kMargin / 2) +
         "\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::floor(std::log10(x.lo)));
       e <= static_cast<int>(std::ceil(std::log10(x.hi))); ++e) {
    const double v = std::pow(10.0, e);
    if (v < x.lo || v > x.hi) continue;
    svg += "<text x=\"" + Num(x.Map(v)) + "\" y=\"" + Num(kHeight - kMargin + 18) +
           "\" font-size=\"12\" text-anchor=\"middle\">1e" + std::to_string(e) +
           "</text>\n";
  }
  for (int e = static_cast<int>(std::floor(std::log10(y.lo)));
       e <= static_cast<int>(std::ceil(std::log10(y.hi))); ++e) {
    const double v = std::pow(10.0, e);
    if (v < y.lo || v > y.hi) continue;
    svg += "<text x=\"" + Num(kMargin - 6) + "\" y=\"" + Num(y.Map(v) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">1e" + std::to_string(e) +
           "</text>\n";
  }
  svg += "<text x=\"" + Num(kWidth / 2) + "\" y=\"" + Num(kHeight - 12) +
         "\" font-size=\"14\" text-anchor=\"middle\">gap</text>\n";
  svg += "<text x=\"16\" y=\"" + Num(kHeight / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         Num(kHeight / 2) + ")\">regret</text>\n";

  svg += "<polyline fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\" points=\"";
  for (const auto& [d, v] : curve) svg += Num(x.Map(d)) + "," + Num(y.Map(v)) + " ";
  svg += "\"/>\n";
  for (const SweepPoint& p : points) {
    if (p.mean_regret <= 0) continue;
    const double px = x.Map(p.delta);
    const double lo = std::max(p.mean_regret - p.stderr_regret, y.lo);
    const double hi = p.mean_regret + p.stderr_regret;
    svg += "<line x1=\"" + Num(px) + "\" y1=\"" + Num(y.Map(lo)) + "\" x2=\"" +
           Num(px) + "\" y2=\"" + Num(y.Map(hi)) + "\" stroke=\"#1f77b4\"/>\n";
    svg += "<circle cx=\"" + Num(px) + "\" cy=\"" + Num(y.Map(p.mean_regret)) +
           "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace mpb
