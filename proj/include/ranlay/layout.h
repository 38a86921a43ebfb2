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
#ifndef RANLAY_LAYOUT_H_
#define RANLAY_LAYOUT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranlay/geometry.h"

namespace ranlay {

// The five layout classes, in their canonical order. Sampling and all
// per-class tables follow this order.
enum class LayoutClass : int { kText = 0, kTitle, kList, kTable, kFigure };

inline constexpr int kNumClasses = 5;
inline constexpr std::array<LayoutClass, kNumClasses> kAllClasses = {
    LayoutClass::kText, LayoutClass::kTitle, LayoutClass::kList,
    LayoutClass::kTable, LayoutClass::kFigure};

inline constexpr int ClassIndex(LayoutClass c) { return static_cast<int>(c); }
inline constexpr bool IsKnownClass(LayoutClass c) {
  return ClassIndex(c) >= 0 && ClassIndex(c) < kNumClasses;
}

// "Text", "Title", ...
std::string_view ClassName(LayoutClass c);

// Case-insensitive match against the canonical names.
std::optional<LayoutClass> ParseClassName(std::string_view name);

// Bijection between the layout classes and integer label ids.
class ClassMap {
 public:
  // Text=0, Title=1, List=2, Table=3, Figure=4.
  ClassMap();

  // ids[k] is the id for kAllClasses[k]; ids must be distinct and >= 0.
  explicit ClassMap(const std::array<int, kNumClasses>& ids);

  int IdOf(LayoutClass c) const { return ids_[ClassIndex(c)]; }
  std::optional<LayoutClass> ClassOf(int id) const;

  bool operator==(const ClassMap&) const = default;

 private:
  std::array<int, kNumClasses> ids_;
};

struct SourceRef {
  std::string image_path;
  BBox bbox;

  bool operator==(const SourceRef&) const = default;
};

struct LayoutElement {
  BBox bbox;
  LayoutClass label = LayoutClass::kText;
  std::optional<SourceRef> source;
  // COCO annotation id; 0 when the element did not come from a COCO file.
  int64_t annotation_id = 0;

  bool operator==(const LayoutElement&) const = default;
};

struct AnnotatedPage {
  std::string image_path;
  int width = 0;
  int height = 0;
  std::vector<LayoutElement> elements;
  // COCO image id; 0 when unassigned.
  int64_t image_id = 0;

  bool operator==(const AnnotatedPage&) const = default;
};

// COCO category as read from a file, kept so that writing reproduces the
// original ids and names.
struct CocoCategory {
  int64_t id = 0;
  std::string name;
  LayoutClass label = LayoutClass::kText;

  bool operator==(const CocoCategory&) const = default;
};

// One predicted box, as consumed by the evaluator.
struct Detection {
  BBox bbox;
  LayoutClass label = LayoutClass::kText;
  double confidence = 0;

  bool operator==(const Detection&) const = default;
};

struct DetectionPage {
  std::string image_path;
  std::vector<Detection> detections;
};

struct Dataset {
  std::vector<AnnotatedPage> pages;
  ClassMap class_map;
  std::vector<CocoCategory> coco_categories;

  size_t ElementCount() const;

  bool operator==(const Dataset&) const = default;
};

}  // namespace ranlay

#endif  // RANLAY_LAYOUT_H_
