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

#include "oracles.h"
#include "ranlay/error.h"
#include "ranlay/geometry.h"
#include "ranlay/rng.h"

namespace ranlay {
namespace {

using doctest::Approx;

TEST_CASE("area") {
  CHECK(Area({0, 0, 2, 2}) == 4.0);
  CHECK(Area({0, 0, 1, 5}) == 5.0);
  CHECK(Area({3, 4, 3.5, 10}) == 3.0);
}

TEST_CASE("intersect") {
  auto r = Intersect({0, 0, 2, 2}, {1, 1, 3, 3});
  REQUIRE(r);
  CHECK(*r == BBox{1, 1, 2, 2});
  CHECK_FALSE(Intersect({0, 0, 1, 1}, {1, 0, 2, 1}));
  CHECK_FALSE(Intersect({0, 0, 1, 1}, {1, 1, 2, 2}));
  auto inner = Intersect({0, 0, 4, 4}, {1, 1, 2, 2});
  REQUIRE(inner);
  CHECK(*inner == BBox{1, 1, 2, 2});
}

TEST_CASE("iou examples") {
  CHECK(Iou({3, 4, 9, 12}, {3, 4, 9, 12}) == 1.0);
  CHECK(Iou({0, 0, 1, 1}, {5, 5, 6, 6}) == 0.0);
  CHECK(Iou({0, 0, 2, 2}, {1, 1, 3, 3}) == Approx(1.0 / 7).epsilon(1e-12));
}

TEST_CASE("translate") {
  CHECK(Translate({10, 20, 110, 220}, 0, 0) == BBox{10, 20, 110, 220});
  CHECK(Translate({0, 0, 100, 200}, 50, 75) == BBox{50, 75, 150, 275});
  try {
    Translate({5, 5, 10, 10}, -6, 0);
    FAIL("expected OutOfCanvas");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfCanvas);
  }
}

TEST_CASE("to_yolo and from_yolo examples") {
  YoloBox y = ToYolo({10, 20, 110, 220}, 3, 1000, 1000);
  CHECK(y.class_id == 3);
  CHECK(y.cx == Approx(0.06));
  CHECK(y.cy == Approx(0.12));
  CHECK(y.w == Approx(0.10));
  CHECK(y.h == Approx(0.20));

  YoloBox full = ToYolo({0, 0, 640, 480}, 0, 640, 480);
  CHECK(full == YoloBox{0, 0.5, 0.5, 1.0, 1.0});

  CHECK(FromYolo({0, 0.5, 0.5, 1.0, 1.0}, 800, 600) == BBox{0, 0, 800, 600});
  BBox b = FromYolo({0, 0.06, 0.12, 0.10, 0.20}, 1000, 1000);
  CHECK(b.x_min == Approx(10));
  CHECK(b.y_min == Approx(20));
  CHECK(b.x_max == Approx(110));
  CHECK(b.y_max == Approx(220));

  CHECK_THROWS_AS(ToYolo({0, 0, 101, 10}, 0, 100, 100), Error);
}

TEST_CASE("validity") {
  CHECK(IsValid(BBox{0, 0, 1, 1}));
  CHECK_FALSE(IsValid(BBox{0, 0, 0, 1}));
  CHECK_FALSE(IsValid(BBox{-1, 0, 1, 1}));
  CHECK_FALSE(IsValid(BBox{0, 0, NAN, 1}));
  CHECK(IsValid(YoloBox{0, 0.5, 0.5, 1, 1}));
  CHECK(IsValid(YoloBox{0, 0.5000005, 0.5, 1, 1}));
  CHECK_FALSE(IsValid(YoloBox{0, 0.6, 0.5, 1, 1}));
  CHECK_FALSE(IsValid(YoloBox{0, 0.5, 0.5, 0, 1}));
}

BBox RandomIntBox(Rng& rng, int limit) {
  int x0 = static_cast<int>(rng.UniformIndex(limit));
  int y0 = static_cast<int>(rng.UniformIndex(limit));
  int w = 1 + static_cast<int>(rng.UniformIndex(limit - x0));
  int h = 1 + static_cast<int>(rng.UniformIndex(limit - y0));
  return BBox{static_cast<double>(x0), static_cast<double>(y0),
              static_cast<double>(x0 + w), static_cast<double>(y0 + h)};
}

TEST_CASE("iou matches pixel counting on integer boxes") {
  Rng rng(11);
  for (int t = 0; t < 400; ++t) {
    BBox a = RandomIntBox(rng, 64);
    BBox b = RandomIntBox(rng, 64);
    CHECK(Iou(a, b) == Approx(testing::PixelCountIou(a, b)).epsilon(1e-6));
    CHECK(Iou(a, b) == Iou(b, a));
    CHECK(Iou(a, a) == 1.0);
  }
}

TEST_CASE("translate preserves area") {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    BBox b = RandomIntBox(rng, 500);
    double dx = rng.NextDouble() * 300;
    double dy = rng.NextDouble() * 300;
    BBox moved = Translate(b, dx, dy);
    CHECK(moved.width() == Approx(b.width()).epsilon(1e-12));
    CHECK(moved.height() == Approx(b.height()).epsilon(1e-12));
  }
}

TEST_CASE("yolo round trip over random boxes") {
  Rng rng(13);
  for (int t = 0; t < 10000; ++t) {
    const double w = 16 + rng.UniformIndex(4000);
    const double h = 16 + rng.UniformIndex(4000);
    double x0 = rng.NextDouble() * (w - 1);
    double y0 = rng.NextDouble() * (h - 1);
    double x1 = x0 + (w - x0) * (0.001 + 0.999 * rng.NextDouble());
    double y1 = y0 + (h - y0) * (0.001 + 0.999 * rng.NextDouble());
    BBox b{x0, y0, x1, y1};
    YoloBox y = ToYolo(b, 1, w, h);
    REQUIRE(IsValid(y));
    BBox back = FromYolo(y, w, h);
    CHECK(std::abs(back.x_min - b.x_min) <= 1e-6 * w);
    CHECK(std::abs(back.x_max - b.x_max) <= 1e-6 * w);
    CHECK(std::abs(back.y_min - b.y_min) <= 1e-6 * h);
    CHECK(std::abs(back.y_max - b.y_max) <= 1e-6 * h);
    YoloBox again = ToYolo(BBox{std::max(back.x_min, 0.0), std::max(back.y_min, 0.0),
                                std::min(back.x_max, w), std::min(back.y_max, h)},
                           1, w, h);
    CHECK(std::abs(again.cx - y.cx) <= 1e-6);
    CHECK(std::abs(again.w - y.w) <= 1e-6);
  }
}

}  // namespace
}  // namespace ranlay
