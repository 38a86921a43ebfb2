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
#ifndef RANLAY_COMPOSER_H_
#define RANLAY_COMPOSER_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "ranlay/crop_bank.h"
#include "ranlay/layout.h"
#include "ranlay/raster.h"
#include "ranlay/rng.h"

namespace ranlay {

struct NoiseConfig {
  // Probability that an element's class is replaced by a different one.
  double class_flip_prob = 0;
  // Each box edge moves by a uniform offset in [-bbox_jitter_px, +bbox_jitter_px).
  double bbox_jitter_px = 0;

  bool active() const { return class_flip_prob > 0 || bbox_jitter_px > 0; }
  bool operator==(const NoiseConfig&) const = default;
};

struct GenConfig {
  int canvas_w = 1224;
  int canvas_h = 1584;
  int gap = 10;
  int margin = 20;
  int max_elements_per_page = 30;
  int max_rejections = 50;
  bool scale_to_fit = true;
  ClassWeights class_weights;
  int page_count = 1;
  uint64_t master_seed = 0;
  NoiseConfig noise;
  int min_crop_px = 8;
  // Chance per draw of pasting a whole source page instead of an element
  // crop; only used when the bank holds whole pages.
  double whole_page_prob = 0;
  bool write_yolo = true;
  bool write_coco = false;

  bool operator==(const GenConfig&) const = default;
};

// Throws Error(kInvalidConfig) naming the first offending field.
void ValidateConfig(const GenConfig& cfg);

struct CropRef {
  bool whole_page = false;
  LayoutClass label = LayoutClass::kText;
  size_t index = 0;

  bool operator==(const CropRef&) const = default;
};

struct Placement {
  CropRef crop;
  // Integer-aligned target rectangle on the canvas.
  BBox target;
  // Uniform downscale applied to the crop; 1 when pasted at native size.
  double scale = 1;
  int row = 0;

  bool operator==(const Placement&) const = default;
};

enum class StopReason { kMaxElements, kMaxRejections, kVerticalExhaustion };

std::string_view StopReasonName(StopReason r);

struct PlacementPlan {
  int64_t page_index = 0;
  uint64_t page_seed = 0;
  std::vector<Placement> placements;
  int rejections = 0;
  StopReason stop = StopReason::kMaxElements;

  bool operator==(const PlacementPlan&) const = default;
};

// Shelf placement. The cursor starts at (margin, margin). Each step samples
// a class and a crop; a crop wider or taller than the usable area is
// downscaled to fit when scale_to_fit is set and rejected otherwise. A crop
// that fits on the current row is placed at the cursor, which then moves
// right by width + gap. Otherwise the row is closed (the cursor drops by the
// row height + gap and returns to the left margin) and the crop is retried
// once; if it still does not fit it counts as a rejection. The plan ends at
// max_elements_per_page placements, max_rejections consecutive rejections,
// or when the cursor reaches the bottom margin.
//
// Throws kEmptyClass when a positive-weight class has no crops and
// kUnplaceableConfig when no such crop fits an empty canvas.
PlacementPlan SmartPlot(const CropBank& bank, const GenConfig& cfg,
                        uint64_t page_seed);

struct RenderedPage {
  Image image;
  std::vector<LayoutElement> elements;
};

// White canvas with every placement pasted (bilinear resampling when the
// target size differs from the crop). Elements carry the target boxes.
RenderedPage Render(const PlacementPlan& plan, const CropBank& bank,
                    const GenConfig& cfg);

// Each element independently: with class_flip_prob its label becomes one of
// the four other classes, uniformly. With bbox_jitter_px > 0 the four edges
// are perturbed and clamped to the canvas; a draw that leaves no area is
// retried up to 10 times, after which the box is kept unchanged. A zero
// config returns the input untouched and consumes no randomness.
std::vector<LayoutElement> InjectLabelNoise(std::vector<LayoutElement> elements,
                                            const NoiseConfig& noise,
                                            int canvas_w, int canvas_h, Rng& rng);

struct GeneratedPage {
  PlacementPlan plan;
  RenderedPage page;
};

// Plan, render and noise for one page. The placement stream is seeded with
// SeedDerive(master_seed, page_index); the noise stream with
// SeedDerive(page_seed, 1).
GeneratedPage GeneratePage(const CropBank& bank, const GenConfig& cfg,
                           int64_t page_index);

// All pages in memory, generated by `workers` OpenMP threads
// (0 = runtime default). Identical to ComposePagesSerial.
std::vector<GeneratedPage> ComposePages(const CropBank& bank,
                                        const GenConfig& cfg, int workers = 0);
std::vector<GeneratedPage> ComposePagesSerial(const CropBank& bank,
                                              const GenConfig& cfg);

inline constexpr char kPageNameFormat[] = "page_{:06d}";

struct PageSummary {
  size_t placements = 0;
  int rejections = 0;
  StopReason stop = StopReason::kMaxElements;
};

struct GenerationResult {
  // image_path values are relative to <out_dir>/images.
  Dataset dataset;
  std::vector<PageSummary> pages;
};

// Writes <out_dir>/images/page_NNNNNN.png, labels/page_NNNNNN.txt (YOLO),
// annotations.json (COCO) and report.json. Output bytes do not depend on
// `workers`. Errors carry the page index.
GenerationResult GenerateDataset(const CropBank& bank, const GenConfig& cfg,
                                 const std::filesystem::path& out_dir,
                                 int workers = 0);

// Single-threaded reference for GenerateDataset.
GenerationResult GenerateDatasetSerial(const CropBank& bank,
                                       const GenConfig& cfg,
                                       const std::filesystem::path& out_dir);

}  // namespace ranlay

#endif  // RANLAY_COMPOSER_H_
