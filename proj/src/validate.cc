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
#include "ranlay/validate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace ranlay {

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kPageDimensions: return "page-dimensions";
    case ViolationKind::kDuplicateImagePath: return "duplicate-image-path";
    case ViolationKind::kOutOfBounds: return "out-of-bounds";
    case ViolationKind::kNonPositiveArea: return "non-positive-area";
    case ViolationKind::kUnknownClass: return "unknown-class";
    case ViolationKind::kOverlap: return "overlap";
  }
  return "?";
}

namespace {

bool Finite(const BBox& b) {
  return std::isfinite(b.x_min) && std::isfinite(b.y_min) &&
         std::isfinite(b.x_max) && std::isfinite(b.y_max);
}

}  // namespace

std::vector<std::pair<size_t, size_t>> OverlappingPairs(
    const std::vector<BBox>& boxes) {
  std::vector<size_t> order;
  for (size_t i = 0; i < boxes.size(); ++i) {
    if (Finite(boxes[i])) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return boxes[a].x_min < boxes[b].x_min;
  });
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<size_t> active;
  for (size_t idx : order) {
    const BBox& cur = boxes[idx];
    std::erase_if(active, [&](size_t a) { return boxes[a].x_max <= cur.x_min; });
    for (size_t a : active) {
      if (Intersect(boxes[a], cur)) {
        pairs.emplace_back(std::min(a, idx), std::max(a, idx));
      }
    }
    active.push_back(idx);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Violation> Validate(const Dataset& d, const ValidationPolicy& policy) {
  std::vector<Violation> out;
  std::set<std::string> seen_paths;
  for (size_t p = 0; p < d.pages.size(); ++p) {
    const AnnotatedPage& page = d.pages[p];
    if (page.width <= 0 || page.height <= 0) {
      out.push_back({ViolationKind::kPageDimensions, p, kNoIndex, kNoIndex,
                     fmt::format("{}: page size {}x{} is not positive",
                                 page.image_path, page.width, page.height)});
    }
    if (!seen_paths.insert(page.image_path).second) {
      out.push_back({ViolationKind::kDuplicateImagePath, p, kNoIndex, kNoIndex,
                     fmt::format("{}: image path listed more than once",
                                 page.image_path)});
    }
    for (size_t i = 0; i < page.elements.size(); ++i) {
      const LayoutElement& e = page.elements[i];
      const BBox& b = e.bbox;
      if (!Finite(b) || !InsideCanvas(b, page.width, page.height)) {
        out.push_back({ViolationKind::kOutOfBounds, p, i, kNoIndex,
                       fmt::format("{}: element {} box ({}, {}, {}, {}) is "
                                   "outside the {}x{} page",
                                   page.image_path, i, b.x_min, b.y_min,
                                   b.x_max, b.y_max, page.width, page.height)});
      }
      if (!(b.x_min < b.x_max && b.y_min < b.y_max)) {
        out.push_back({ViolationKind::kNonPositiveArea, p, i, kNoIndex,
                       fmt::format("{}: element {} has no area",
                                   page.image_path, i)});
      }
      if (!IsKnownClass(e.label)) {
        out.push_back({ViolationKind::kUnknownClass, p, i, kNoIndex,
                       fmt::format("{}: element {} has class value {}",
                                   page.image_path, i, ClassIndex(e.label))});
      }
    }
    if (policy.no_overlap) {
      std::vector<BBox> boxes;
      boxes.reserve(page.elements.size());
      for (const auto& e : page.elements) boxes.push_back(e.bbox);
      for (auto [i, j] : OverlappingPairs(boxes)) {
        out.push_back({ViolationKind::kOverlap, p, i, j,
                       fmt::format("{}: elements {} and {} overlap",
                                   page.image_path, i, j)});
      }
    }
  }
  return out;
}

}  // namespace ranlay
