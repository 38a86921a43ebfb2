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
#include "ranlay/stats.h"

#include <fmt/format.h>

namespace ranlay {

double RoundedPercentage(int64_t count, int64_t total) {
  if (total <= 0) return 0.0;
  // floor(10000 * count / total + 1/2), as an integer number of hundredths.
  const __int128 hundredths =
      (static_cast<__int128>(20000) * count + total) / (2 * static_cast<__int128>(total));
  return static_cast<double>(static_cast<int64_t>(hundredths)) / 100.0;
}

DatasetStats StatsFromCounts(const std::array<int64_t, kNumClasses>& counts) {
  DatasetStats s;
  s.counts = counts;
  for (int64_t n : counts) s.total += n;
  for (int k = 0; k < kNumClasses; ++k) {
    s.ratios[k] = s.total > 0 ? static_cast<double>(counts[k]) / s.total : 0.0;
    s.percentages[k] = RoundedPercentage(counts[k], s.total);
  }
  return s;
}

DatasetStats ClassDistribution(const Dataset& d) {
  std::array<int64_t, kNumClasses> counts{};
  for (const auto& page : d.pages) {
    for (const auto& e : page.elements) {
      if (IsKnownClass(e.label)) ++counts[ClassIndex(e.label)];
    }
  }
  DatasetStats s = StatsFromCounts(counts);
  PageStatsSummary pages = PageStats(d);
  s.pages = static_cast<int64_t>(d.pages.size());
  s.mean_elements_per_page = pages.mean_elements;
  s.mean_fill_ratio = pages.mean_fill_ratio;
  return s;
}

PageStatsSummary PageStats(const Dataset& d) {
  PageStatsSummary out;
  out.pages.reserve(d.pages.size());
  double element_sum = 0;
  double fill_sum = 0;
  for (const auto& page : d.pages) {
    PageStat ps;
    ps.elements = page.elements.size();
    double area = 0;
    for (const auto& e : page.elements) area += Area(e.bbox);
    const double page_area = static_cast<double>(page.width) * page.height;
    ps.fill_ratio = page_area > 0 ? area / page_area : 0.0;
    element_sum += static_cast<double>(ps.elements);
    fill_sum += ps.fill_ratio;
    out.pages.push_back(ps);
  }
  if (!out.pages.empty()) {
    out.mean_elements = element_sum / out.pages.size();
    out.mean_fill_ratio = fill_sum / out.pages.size();
  }
  return out;
}

std::string FormatDistributionTable(const DatasetStats& s) {
  std::string out = fmt::format("{:<8} {:>10} {:>14}\n", "Label", "Count",
                                "Percentage (%)");
  for (LayoutClass c : kAllClasses) {
    const int k = ClassIndex(c);
    out += fmt::format("{:<8} {:>10} {:>14.2f}\n", ClassName(c), s.counts[k],
                       s.percentages[k]);
  }
  out += fmt::format("{:<8} {:>10}\n", "Total", s.total);
  if (s.pages > 0) {
    out += fmt::format("pages {}  mean elements/page {:.2f}  mean fill ratio {:.4f}\n",
                       s.pages, s.mean_elements_per_page, s.mean_fill_ratio);
  }
  return out;
}

}  // namespace ranlay
