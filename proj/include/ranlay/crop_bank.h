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
#ifndef RANLAY_CROP_BANK_H_
#define RANLAY_CROP_BANK_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ranlay/layout.h"
#include "ranlay/raster.h"
#include "ranlay/rng.h"

namespace ranlay {

// Element counts of the reference five-class distribution, Text..Figure.
inline constexpr std::array<int64_t, kNumClasses> kReferenceClassCounts = {
    95227, 45306, 23090, 22146, 23493};

struct Crop {
  Image pixels;
  LayoutClass label = LayoutClass::kText;
  SourceRef provenance;
  // Annotations in crop-local pixel coordinates. An element crop holds one
  // element covering the whole raster; a whole-page crop holds every
  // annotation of the page.
  std::vector<LayoutElement> elements;

  int width() const { return pixels.width; }
  int height() const { return pixels.height; }
};

// Sampling weight per class in canonical order; sums to 1.
class ClassWeights {
 public:
  // Proportional to kReferenceClassCounts.
  ClassWeights();

  // Normalizes non-negative weights. Throws kInvalidConfig when a weight is
  // negative or non-finite, or all are zero.
  static ClassWeights FromUnnormalized(const std::array<double, kNumClasses>& w);

  double operator[](LayoutClass c) const { return w_[ClassIndex(c)]; }
  const std::array<double, kNumClasses>& values() const { return w_; }

  bool operator==(const ClassWeights&) const = default;

 private:
  std::array<double, kNumClasses> w_;
};

struct BankOptions {
  int min_crop_px = 8;
  // Also store every source page as a whole-page crop.
  bool include_whole_pages = false;
};

class CropBank {
 public:
  const std::vector<Crop>& crops(LayoutClass c) const {
    return by_class_[ClassIndex(c)];
  }
  size_t count(LayoutClass c) const { return by_class_[ClassIndex(c)].size(); }
  // Elements dropped for being smaller than min_crop_px.
  size_t skipped(LayoutClass c) const { return skipped_[ClassIndex(c)]; }
  size_t total() const;
  size_t total_skipped() const;
  bool empty() const { return total() == 0 && whole_pages_.empty(); }

  const std::vector<Crop>& whole_pages() const { return whole_pages_; }

  void Add(Crop crop) { by_class_[ClassIndex(crop.label)].push_back(std::move(crop)); }
  void AddSkipped(LayoutClass c, size_t n = 1) { skipped_[ClassIndex(c)] += n; }
  void AddWholePage(Crop crop) { whole_pages_.push_back(std::move(crop)); }

 private:
  std::array<std::vector<Crop>, kNumClasses> by_class_;
  std::array<size_t, kNumClasses> skipped_{};
  std::vector<Crop> whole_pages_;
};

// Pixel rectangle of a box after rounding each edge half-up and clamping to
// the page: {x, y, w, h}.
std::array<int, 4> RasterRect(const BBox& b, int page_w, int page_h);

// Page images are read from image_root / image_path (absolute paths are used
// as is). Pages are processed in parallel; the result is identical to
// BuildBankSerial. Throws kImageUnreadable or kDimensionMismatch; with
// several failing pages the lowest page index is reported.
CropBank BuildBank(const Dataset& d, const std::filesystem::path& image_root,
                   const BankOptions& options = {});

// Single-threaded reference for BuildBank.
CropBank BuildBankSerial(const Dataset& d,
                         const std::filesystem::path& image_root,
                         const BankOptions& options = {});

// Inverse CDF over Text, Title, List, Table, Figure with one uniform draw.
LayoutClass SampleClass(const ClassWeights& w, Rng& rng);

// Uniform index into crops(c), with replacement. Throws kEmptyClass.
size_t SampleCropIndex(const CropBank& bank, LayoutClass c, Rng& rng);

// On-disk cache: <dir>/index.json plus one PNG per crop under <dir>/crops.
void SaveBank(const CropBank& bank, const std::filesystem::path& dir);
CropBank LoadBank(const std::filesystem::path& dir);

}  // namespace ranlay

#endif  // RANLAY_CROP_BANK_H_
