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
#ifndef RANLAY_ANNOT_IO_H_
#define RANLAY_ANNOT_IO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranlay/layout.h"

namespace ranlay {

// Boxes that overshoot the page border by at most this much are clamped
// onto the page with a warning; anything further out is rejected.
inline constexpr double kClampTolerancePx = 0.5;

// Manifest columns, in order.
inline constexpr std::array<std::string_view, 8> kManifestColumns = {
    "image_path", "image_width", "image_height", "class_label",
    "x_min",      "y_min",       "x_max",        "y_max"};

// Collects non-fatal diagnostics (clamped boxes, skipped records).
using Warnings = std::vector<std::string>;

// Manifest CSV. Rows for the same image are grouped into one page, pages in
// order of first appearance. `source_name` prefixes error locations.
Dataset ParseManifest(const std::filesystem::path& csv_path,
                      Warnings* warnings = nullptr);
Dataset ParseManifestText(std::string_view text, std::string_view source_name,
                          Warnings* warnings = nullptr);
std::string FormatManifest(const Dataset& d);
void WriteManifest(const Dataset& d, const std::filesystem::path& csv_path);

struct CocoReadOptions {
  // Lower-case category name -> class, consulted before the built-in
  // case-insensitive match on the five class names.
  std::map<std::string, LayoutClass> aliases;
};

Dataset ReadCoco(const std::filesystem::path& json_path,
                 const CocoReadOptions& options = {},
                 Warnings* warnings = nullptr);
Dataset ParseCocoText(std::string_view text, std::string_view source_name,
                      const CocoReadOptions& options = {},
                      Warnings* warnings = nullptr);
std::string FormatCoco(const Dataset& d);
void WriteCoco(const Dataset& d, const std::filesystem::path& json_path);

// "class_id cx cy w h" with six decimals and no trailing newline.
std::string FormatYoloLine(const YoloBox& y);

// Label contents for one page: one newline-terminated line per element.
std::string FormatYoloLabels(const AnnotatedPage& page, const ClassMap& map);

// One <stem>.txt per PNG in images_dir; page dimensions come from the PNG
// headers. Pages are ordered by file name and image_path is the file name.
Dataset ReadYoloLabels(const std::filesystem::path& labels_dir,
                       const std::filesystem::path& images_dir,
                       const ClassMap& class_map = {});

// Parses one label file body against known page dimensions.
std::vector<LayoutElement> ParseYoloLabels(std::string_view text,
                                           std::string_view source_name,
                                           int width, int height,
                                           const ClassMap& class_map);

// Writes <stem of image_path>.txt per page into out_dir.
void WriteYoloLabels(const Dataset& d, const std::filesystem::path& out_dir);

// Prediction files: YOLO lines with a sixth confidence column, one file per
// reference page stem. A missing file means no detections on that page;
// files without a reference page are returned with image_path = file stem.
std::vector<DetectionPage> ReadYoloPredictions(
    const std::filesystem::path& labels_dir, const Dataset& reference);

// COCO results array [{image_id, category_id, bbox, score}]. Image ids and
// category ids resolve against the reference ground truth.
std::vector<DetectionPage> ReadCocoResults(
    const std::filesystem::path& json_path, const Dataset& reference,
    Warnings* warnings = nullptr);

enum class DatasetFormat { kManifest, kCoco, kYolo };

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name);

// .csv -> manifest, .json -> COCO, directory -> YOLO (images/ + labels/).
DatasetFormat DetectFormat(const std::filesystem::path& path);

// YOLO paths name a directory holding images/ and labels/.
Dataset LoadDataset(const std::filesystem::path& path,
                    std::optional<DatasetFormat> format = std::nullopt,
                    const CocoReadOptions& coco_options = {},
                    Warnings* warnings = nullptr);

// Directory that page image_path values are relative to.
std::filesystem::path DefaultImageRoot(const std::filesystem::path& path,
                                       DatasetFormat format);

}  // namespace ranlay

#endif  // RANLAY_ANNOT_IO_H_
