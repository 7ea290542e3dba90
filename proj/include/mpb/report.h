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

#ifndef MPB_REPORT_H_
#define MPB_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpb/harness.h"

namespace mpb {

inline constexpr std::string_view kCsvHeader =
    "delta,mean_regret,stderr,reference,collisions,trials,seed_base";

// CSV text with kCsvHeader and full-precision numbers. Throws on empty input.
std::string FormatCsv(std::span<const SweepPoint> points);
std::vector<SweepPoint> ParseCsv(std::string_view text);

// Log-log plot of measured regret (with one-stderr bars) over the reference
// curve, rescaled to meet the measurements at the smallest gap.
std::string FormatSvg(std::span<const SweepPoint> points,
                      std::span<const double> deltas);

// Writes `contents` to `path`; throws std::runtime_error on failure.
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace mpb

#endif  // MPB_REPORT_H_
