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
#ifndef RANLAY_GEOMETRY_H_
#define RANLAY_GEOMETRY_H_

#include <optional>

namespace ranlay {

// Axis-aligned box in pixel coordinates. The max edges are exclusive, so a
// box spanning pixels [0, 10) has x_min = 0 and x_max = 10.
struct BBox {
  double x_min = 0;
  double y_min = 0;
  double x_max = 0;
  double y_max = 0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }

  bool operator==(const BBox&) const = default;
};

// Finite, non-negative coordinates with strictly positive extent.
bool IsValid(const BBox& b);

// True when b lies in [0, w] x [0, h].
bool InsideCanvas(const BBox& b, double w, double h);

// Center/size box normalized by the canvas dimensions.
struct YoloBox {
  int class_id = 0;
  double cx = 0;
  double cy = 0;
  double w = 0;
  double h = 0;

  bool operator==(const YoloBox&) const = default;
};

// Slack allowed on the normalized extents, covering 6-decimal quantization.
inline constexpr double kYoloTolerance = 1e-6;

bool IsValid(const YoloBox& y);

double Area(const BBox& b);

// Overlap rectangle; nullopt when the overlap has zero area, so boxes that
// only share an edge or a corner do not intersect.
std::optional<BBox> Intersect(const BBox& a, const BBox& b);

double Iou(const BBox& a, const BBox& b);

// Throws Error(kOutOfCanvas) if any resulting coordinate is negative.
BBox Translate(const BBox& b, double dx, double dy);

// Throws Error(kOutOfCanvas) if b is not inside the canvas.
YoloBox ToYolo(const BBox& b, int class_id, double canvas_w, double canvas_h);

BBox FromYolo(const YoloBox& y, double canvas_w, double canvas_h);

}  // namespace ranlay

#endif  // RANLAY_GEOMETRY_H_
