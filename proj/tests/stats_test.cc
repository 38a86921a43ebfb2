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
#include <doctest.h>

#include <cmath>

#include "ranlay/rng.h"
#include "ranlay/stats.h"

namespace ranlay {
namespace {

constexpr std::array<int64_t, kNumClasses> kCounts = {95227, 45306, 23090, 22146, 23493};
// As printed in the published distribution table.
constexpr std::array<double, kNumClasses> kPublished = {45.52, 21.65, 11.03, 10.58, 11.22};
// Exact half-up rounding, computed offline with decimal arithmetic.
constexpr std::array<double, kNumClasses> kExact = {45.51, 21.65, 11.03, 10.58, 11.23};

// Schoolbook long division of 100 * count / total to two decimals, with a
// half-up decision on the remainder.
std::string LongDivisionPercent(int64_t count, int64_t total) {
  int64_t num = count * 100;
  std::string out = std::to_string(num / total) + ".";
  int64_t rem = num % total;
  int digits[2];
  for (int& d : digits) {
    rem *= 10;
    d = static_cast<int>(rem / total);
    rem %= total;
  }
  int64_t whole = num / total;
  int frac = digits[0] * 10 + digits[1];
  if (2 * rem >= total) {
    if (++frac == 100) {
      frac = 0;
      ++whole;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%02d", static_cast<long long>(whole), frac);
  return buf;
}

std::string TwoDecimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

TEST_CASE("stats: reference counts against the published table") {
  DatasetStats s = StatsFromCounts(kCounts);
  CHECK(s.total == 209262);
  for (int k = 0; k < kNumClasses; ++k) {
    CHECK(std::abs(s.percentages[k] - kPublished[k]) <= 0.02 + 1e-9);
    CHECK(s.percentages[k] == kExact[k]);
    CHECK(TwoDecimals(s.percentages[k]) == LongDivisionPercent(kCounts[k], s.total));
    CHECK(s.ratios[k] == doctest::Approx(static_cast<double>(kCounts[k]) / 209262));
  }
}

TEST_CASE("stats: rounding agrees with long division on random counts") {
  Rng rng(17);
  for (int i = 0; i < 20000; ++i) {
    const int64_t total = 1 + static_cast<int64_t>(rng.UniformIndex(5000000));
    const int64_t count = static_cast<int64_t>(rng.UniformIndex(total + 1));
    REQUIRE(TwoDecimals(RoundedPercentage(count, total)) ==
            LongDivisionPercent(count, total));
  }
  // Exact halves round up.
  CHECK(RoundedPercentage(1, 8) == 12.5);
  CHECK(RoundedPercentage(1, 16) == 6.25);
  CHECK(RoundedPercentage(1, 160000) == 0.0);
  CHECK(RoundedPercentage(1, 1600) == 0.06);
  CHECK(RoundedPercentage(0, 0) == 0.0);
}

TEST_CASE("stats: single class and empty dataset") {
  Dataset d;
  d.pages.push_back(AnnotatedPage{"a.png", 100, 100, {}, 1});
  for (int i = 0; i < 3; ++i) {
    d.pages[0].elements.push_back({{0, 0, 10, 10}, LayoutClass::kList, std::nullopt, 0});
  }
  DatasetStats s = ClassDistribution(d);
  CHECK(s.percentages == std::array<double, kNumClasses>{0, 0, 100, 0, 0});
  CHECK(s.total == 3);
  DatasetStats empty = ClassDistribution(Dataset{});
  CHECK(empty.total == 0);
  CHECK(empty.percentages == std::array<double, kNumClasses>{});
}

TEST_CASE("stats: counts match a recount") {
  Rng rng(4);
  Dataset d;
  std::array<int64_t, kNumClasses> expected{};
  for (int p = 0; p < 40; ++p) {
    AnnotatedPage page{"p" + std::to_string(p), 100, 100, {}, p + 1};
    const int n = static_cast<int>(rng.UniformIndex(20));
    for (int i = 0; i < n; ++i) {
      LayoutClass c = kAllClasses[rng.UniformIndex(kNumClasses)];
      expected[ClassIndex(c)]++;
      page.elements.push_back({{0, 0, 1, 1}, c, std::nullopt, 0});
    }
    d.pages.push_back(page);
  }
  DatasetStats s = ClassDistribution(d);
  CHECK(s.counts == expected);
  CHECK(s.pages == 40);
}

TEST_CASE("page stats") {
  Dataset d;
  d.pages.push_back(AnnotatedPage{"empty", 100, 200, {}, 1});
  d.pages.push_back(AnnotatedPage{"full", 100, 200, {{{0, 0, 100, 200}, LayoutClass::kFigure, std::nullopt, 0}}, 2});
  d.pages.push_back(AnnotatedPage{"half", 100, 200,
                                  {{{0, 0, 50, 100}, LayoutClass::kText, std::nullopt, 0},
                                   {{50, 100, 100, 200}, LayoutClass::kText, std::nullopt, 0}},
                                  3});
  PageStatsSummary s = PageStats(d);
  REQUIRE(s.pages.size() == 3);
  CHECK(s.pages[0].elements == 0);
  CHECK(s.pages[0].fill_ratio == 0.0);
  CHECK(s.pages[1].fill_ratio == 1.0);
  CHECK(s.pages[2].fill_ratio == 0.5);
  CHECK(s.mean_elements == 1.0);
  CHECK(s.mean_fill_ratio == doctest::Approx(0.5));
}

TEST_CASE("distribution table text") {
  std::string t = FormatDistributionTable(StatsFromCounts(kCounts));
  CHECK(t.find("Text") != std::string::npos);
  CHECK(t.find("45.51") != std::string::npos);
  CHECK(t.find("11.23") != std::string::npos);
  CHECK(t.find("209262") != std::string::npos);
}

}  // namespace
}  // namespace ranlay
