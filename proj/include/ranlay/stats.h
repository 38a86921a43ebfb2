// Copyright 2026 The ranlay Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef RANLAY_STATS_H_
#define RANLAY_STATS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ranlay/layout.h"

namespace ranlay {

struct DatasetStats {
  std::array<int64_t, kNumClasses> counts{};
  // count / total, unrounded.
  std::array<double, kNumClasses> ratios{};
  // 100 * count / total rounded half-up to two decimals.
  std::array<double, kNumClasses> percentages{};
  int64_t total = 0;
  int64_t pages = 0;
  double mean_elements_per_page = 0;
  double mean_fill_ratio = 0;
};

// Half-up rounding to hundredths in integer arithmetic, so the result is
// reproducible from the counts alone. Zero total gives 0.
double RoundedPercentage(int64_t count, int64_t total);

// Percentages and ratios from raw per-class counts; page fields stay zero.
DatasetStats StatsFromCounts(const std::array<int64_t, kNumClasses>& counts);

DatasetStats ClassDistribution(const Dataset& d);

struct PageStat {
  size_t elements = 0;
  // Sum of element areas over page area.
  double fill_ratio = 0;
};

struct PageStatsSummary {
  std::vector<PageStat> pages;
  double mean_elements = 0;
  double mean_fill_ratio = 0;
};

PageStatsSummary PageStats(const Dataset& d);

// Label / Count / Percentage table.
std::string FormatDistributionTable(const DatasetStats& s);

}  // namespace ranlay

#endif  // RANLAY_STATS_H_
