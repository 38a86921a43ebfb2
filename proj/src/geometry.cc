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
#include "ranlay/geometry.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ranlay/error.h"

namespace ranlay {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfCanvas: return "OutOfCanvas";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNegativeOrInvertedBox: return "NegativeOrInvertedBox";
    case ErrorCode::kUnknownClassLabel: return "UnknownClassLabel";
    case ErrorCode::kMissingImageDimension: return "MissingImageDimension";
    case ErrorCode::kBoxOutOfPage: return "BoxOutOfPage";
    case ErrorCode::kUnmappableCategory: return "UnmappableCategory";
    case ErrorCode::kDanglingImageId: return "DanglingImageId";
    case ErrorCode::kNonPositiveBoxDims: return "NonPositiveBoxDims";
    case ErrorCode::kOutOfRangeNormalizedValue: return "OutOfRangeNormalizedValue";
    case ErrorCode::kUnknownClassId: return "UnknownClassId";
    case ErrorCode::kImageLabelMismatch: return "ImageLabelMismatch";
    case ErrorCode::kImageUnreadable: return "ImageUnreadable";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kUnplaceableConfig: return "UnplaceableConfig";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

bool IsValid(const BBox& b) {
  for (double v : {b.x_min, b.y_min, b.x_max, b.y_max}) {
    if (!std::isfinite(v) || v < 0) return false;
  }
  return b.x_min < b.x_max && b.y_min < b.y_max;
}

bool InsideCanvas(const BBox& b, double w, double h) {
  return b.x_min >= 0 && b.y_min >= 0 && b.x_max <= w && b.y_max <= h;
}

bool IsValid(const YoloBox& y) {
  for (double v : {y.cx, y.cy, y.w, y.h}) {
    if (!std::isfinite(v)) return false;
  }
  if (!(y.w > 0 && y.w <= 1 && y.h > 0 && y.h <= 1)) return false;
  return y.cx - y.w / 2 >= -kYoloTolerance &&
         y.cx + y.w / 2 <= 1 + kYoloTolerance &&
         y.cy - y.h / 2 >= -kYoloTolerance &&
         y.cy + y.h / 2 <= 1 + kYoloTolerance;
}

double Area(const BBox& b) { return b.width() * b.height(); }

std::optional<BBox> Intersect(const BBox& a, const BBox& b) {
  BBox r{std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min),
         std::min(a.x_max, b.x_max), std::min(a.y_max, b.y_max)};
  if (r.x_min >= r.x_max || r.y_min >= r.y_max) return std::nullopt;
  return r;
}

double Iou(const BBox& a, const BBox& b) {
  if (a == b) return 1.0;
  auto inter = Intersect(a, b);
  if (!inter) return 0.0;
  double i = Area(*inter);
  return i / (Area(a) + Area(b) - i);
}

BBox Translate(const BBox& b, double dx, double dy) {
  BBox r{b.x_min + dx, b.y_min + dy, b.x_max + dx, b.y_max + dy};
  if (r.x_min < 0 || r.y_min < 0) {
    throw Error(ErrorCode::kOutOfCanvas,
                fmt::format("translated box ({}, {}) has a negative corner",
                            r.x_min, r.y_min));
  }
  return r;
}

YoloBox ToYolo(const BBox& b, int class_id, double canvas_w,
               double canvas_h) {
  if (!InsideCanvas(b, canvas_w, canvas_h)) {
    throw Error(ErrorCode::kOutOfCanvas,
                fmt::format("box ({}, {}, {}, {}) exceeds {}x{} canvas",
                            b.x_min, b.y_min, b.x_max, b.y_max, canvas_w,
                            canvas_h));
  }
  return YoloBox{class_id, (b.x_min + b.x_max) / (2 * canvas_w),
                 (b.y_min + b.y_max) / (2 * canvas_h), b.width() / canvas_w,
                 b.height() / canvas_h};
}

BBox FromYolo(const YoloBox& y, double canvas_w, double canvas_h) {
  double half_w = y.w * canvas_w / 2;
  double half_h = y.h * canvas_h / 2;
  double cx = y.cx * canvas_w;
  double cy = y.cy * canvas_h;
  return BBox{cx - half_w, cy - half_h, cx + half_w, cy + half_h};
}

}  // namespace ranlay
