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

#include <algorithm>

#include "oracles.h"
#include "ranlay/rng.h"
#include "ranlay/validate.h"

namespace ranlay {
namespace {

AnnotatedPage Page(int w, int h, std::vector<BBox> boxes) {
  AnnotatedPage p;
  p.image_path = "p.png";
  p.width = w;
  p.height = h;
  for (const BBox& b : boxes) {
    p.elements.push_back(LayoutElement{b, LayoutClass::kText, std::nullopt, 0});
  }
  return p;
}

std::vector<testing::ViolationKey> Keys(const std::vector<Violation>& v) {
  std::vector<testing::ViolationKey> out;
  for (const Violation& x : v) {
    out.emplace_back(static_cast<int>(x.kind), x.page, x.element, x.other);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("validate: two identical boxes overlap once") {
  Dataset d;
  d.pages.push_back(Page(100, 100, {{10, 10, 20, 20}, {10, 10, 20, 20}}));
  auto v = Validate(d, {.no_overlap = true});
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kOverlap);
  CHECK(v[0].element == 0);
  CHECK(v[0].other == 1);
  CHECK(Validate(d, {.no_overlap = false}).empty());
}

TEST_CASE("validate: box past the page width") {
  Dataset d;
  d.pages.push_back(Page(100, 100, {{50, 10, 120, 20}}));
  auto v = Validate(d, {});
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kOutOfBounds);
}

TEST_CASE("validate: touching boxes do not overlap") {
  Dataset d;
  d.pages.push_back(Page(100, 100, {{0, 0, 50, 50}, {50, 0, 100, 50}, {0, 50, 50, 100}}));
  CHECK(Validate(d, {.no_overlap = true}).empty());
}

TEST_CASE("validate: page-level problems") {
  Dataset d;
  d.pages.push_back(Page(0, 100, {}));
  d.pages.push_back(Page(10, 10, {{5, 5, 5, 8}}));
  d.pages.back().elements.push_back(
      LayoutElement{{1, 1, 2, 2}, static_cast<LayoutClass>(17), std::nullopt, 0});
  auto v = Validate(d, {});
  CHECK(Keys(v) == testing::BruteForceViolations(d, false));
  CHECK(std::count_if(v.begin(), v.end(), [](const Violation& x) {
          return x.kind == ViolationKind::kDuplicateImagePath;
        }) == 1);
  CHECK(std::count_if(v.begin(), v.end(), [](const Violation& x) {
          return x.kind == ViolationKind::kNonPositiveArea;
        }) == 1);
  CHECK(std::count_if(v.begin(), v.end(), [](const Violation& x) {
          return x.kind == ViolationKind::kUnknownClass;
        }) == 1);
}

TEST_CASE("validate: matches the pairwise oracle on random pages") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Dataset d;
    const int pages = 1 + static_cast<int>(rng.UniformIndex(3));
    for (int p = 0; p < pages; ++p) {
      AnnotatedPage page = Page(200, 200, {});
      page.image_path = "p" + std::to_string(p) + ".png";
      const int n = static_cast<int>(rng.UniformIndex(51));
      for (int i = 0; i < n; ++i) {
        // Integer grid so that touching edges happen often.
        double x0 = static_cast<double>(rng.UniformIndex(21)) * 10 - 5;
        double y0 = static_cast<double>(rng.UniformIndex(21)) * 10 - 5;
        double x1 = x0 + static_cast<double>(rng.UniformIndex(6)) * 10;
        double y1 = y0 + static_cast<double>(rng.UniformIndex(6)) * 10;
        page.elements.push_back(LayoutElement{
            {x0, y0, x1, y1}, kAllClasses[rng.UniformIndex(kNumClasses)],
            std::nullopt, 0});
      }
      d.pages.push_back(std::move(page));
    }
    for (bool no_overlap : {false, true}) {
      REQUIRE(Keys(Validate(d, {.no_overlap = no_overlap})) ==
              testing::BruteForceViolations(d, no_overlap));
    }
  }
}

TEST_CASE("overlapping pairs: sweep equals brute force") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BBox> boxes;
    const int n = static_cast<int>(rng.UniformIndex(80));
    for (int i = 0; i < n; ++i) {
      double x0 = rng.NextDouble() * 100;
      double y0 = rng.NextDouble() * 100;
      boxes.push_back({x0, y0, x0 + rng.NextDouble() * 30, y0 + rng.NextDouble() * 30});
    }
    CHECK(OverlappingPairs(boxes) == testing::BruteForceOverlaps(boxes));
  }
}

}  // namespace
}  // namespace ranlay
