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
#include "ranlay/composer.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>

#include <fmt/format.h>

#include "ranlay/annot_io.h"
#include "ranlay/error.h"
#include "ranlay/report.h"

namespace ranlay {

namespace fs = std::filesystem;

namespace {

constexpr int kJitterAttempts = 10;

int RoundHalfUp(double v) { return static_cast<int>(std::floor(v + 0.5)); }

struct Fit {
  bool ok = false;
  int w = 0;
  int h = 0;
  double scale = 1;
};

// Target size of a crop on the canvas, or !ok when it cannot be placed.
Fit FitCrop(int cw, int ch, const GenConfig& cfg) {
  const int usable_w = cfg.canvas_w - 2 * cfg.margin;
  const int usable_h = cfg.canvas_h - 2 * cfg.margin;
  if (cw <= usable_w && ch <= usable_h) return {true, cw, ch, 1.0};
  if (!cfg.scale_to_fit) return {};
  const double scale = std::min(static_cast<double>(usable_w) / cw,
                                static_cast<double>(usable_h) / ch);
  return {true, std::clamp(RoundHalfUp(cw * scale), 1, usable_w),
          std::clamp(RoundHalfUp(ch * scale), 1, usable_h), scale};
}

bool UseWholePages(const CropBank& bank, const GenConfig& cfg) {
  return cfg.whole_page_prob > 0 && !bank.whole_pages().empty();
}

void CheckPlaceable(const CropBank& bank, const GenConfig& cfg) {
  const bool pages_only = UseWholePages(bank, cfg) && cfg.whole_page_prob >= 1;
  bool placeable = false;
  if (!pages_only) {
    for (LayoutClass c : kAllClasses) {
      if (cfg.class_weights[c] <= 0) continue;
      if (bank.count(c) == 0) {
        throw Error(ErrorCode::kEmptyClass,
                    fmt::format("class {} has weight {} but no crops",
                                ClassName(c), cfg.class_weights[c]));
      }
      for (const Crop& crop : bank.crops(c)) {
        if (FitCrop(crop.width(), crop.height(), cfg).ok) {
          placeable = true;
          break;
        }
      }
    }
  }
  if (UseWholePages(bank, cfg)) {
    for (const Crop& crop : bank.whole_pages()) {
      if (FitCrop(crop.width(), crop.height(), cfg).ok) {
        placeable = true;
        break;
      }
    }
  }
  if (!placeable) {
    throw Error(ErrorCode::kUnplaceableConfig,
                fmt::format("no crop fits the {}x{} usable area",
                            cfg.canvas_w - 2 * cfg.margin,
                            cfg.canvas_h - 2 * cfg.margin));
  }
}

const Crop& Lookup(const CropBank& bank, const CropRef& ref) {
  const std::vector<Crop>& pool =
      ref.whole_page ? bank.whole_pages() : bank.crops(ref.label);
  if (ref.index >= pool.size()) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("placement references crop {} of {} {}", ref.index,
                            pool.size(),
                            ref.whole_page ? "whole pages" : ClassName(ref.label)));
  }
  return pool[ref.index];
}

}  // namespace

std::string_view StopReasonName(StopReason r) {
  switch (r) {
    case StopReason::kMaxElements: return "max_elements";
    case StopReason::kMaxRejections: return "max_rejections";
    case StopReason::kVerticalExhaustion: return "vertical_exhaustion";
  }
  return "?";
}

void ValidateConfig(const GenConfig& cfg) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidConfig, msg);
  };
  if (cfg.min_crop_px < 1) fail("min_crop_px must be >= 1");
  if (cfg.margin < 0) fail("margin must be >= 0");
  if (cfg.gap < 0) fail("gap must be >= 0");
  if (cfg.canvas_w <= 2 * cfg.margin + cfg.min_crop_px) {
    fail(fmt::format("canvas_w {} must exceed 2*margin + min_crop_px = {}",
                     cfg.canvas_w, 2 * cfg.margin + cfg.min_crop_px));
  }
  if (cfg.canvas_h <= 2 * cfg.margin + cfg.min_crop_px) {
    fail(fmt::format("canvas_h {} must exceed 2*margin + min_crop_px = {}",
                     cfg.canvas_h, 2 * cfg.margin + cfg.min_crop_px));
  }
  if (cfg.max_elements_per_page < 1) fail("max_elements_per_page must be >= 1");
  if (cfg.max_rejections < 1) fail("max_rejections must be >= 1");
  if (cfg.page_count < 1) fail("page_count must be >= 1");
  const NoiseConfig& n = cfg.noise;
  if (!(n.class_flip_prob >= 0 && n.class_flip_prob <= 1)) {
    fail("noise.class_flip_prob must be in [0, 1]");
  }
  if (!(n.bbox_jitter_px >= 0) || !std::isfinite(n.bbox_jitter_px)) {
    fail("noise.bbox_jitter_px must be finite and >= 0");
  }
  if (!(cfg.whole_page_prob >= 0 && cfg.whole_page_prob <= 1)) {
    fail("whole_page_prob must be in [0, 1]");
  }
  double sum = 0;
  for (double w : cfg.class_weights.values()) {
    if (!(w >= 0)) fail("class weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) fail("class weights must sum to 1");
}

PlacementPlan SmartPlot(const CropBank& bank, const GenConfig& cfg,
                        uint64_t page_seed) {
  CheckPlaceable(bank, cfg);
  Rng rng(page_seed);
  PlacementPlan plan;
  plan.page_seed = page_seed;
  const bool use_pages = UseWholePages(bank, cfg);
  const int left = cfg.margin;
  const int right = cfg.canvas_w - cfg.margin;
  const int bottom = cfg.canvas_h - cfg.margin;
  int x = left;
  int y = cfg.margin;
  int row_h = 0;
  int row = 0;
  int consecutive = 0;
  CropRef pending;
  for (;;) {
    if (plan.placements.size() >= static_cast<size_t>(cfg.max_elements_per_page)) {
      plan.stop = StopReason::kMaxElements;
      break;
    }
    if (consecutive >= cfg.max_rejections) {
      plan.stop = StopReason::kMaxRejections;
      break;
    }
    if (y >= bottom) {
      plan.stop = StopReason::kVerticalExhaustion;
      break;
    }
    // After a rejection the drawn class is kept and only the crop is redrawn.
    CropRef ref;
    if (consecutive == 0) {
      ref.whole_page = use_pages && rng.NextDouble() < cfg.whole_page_prob;
      if (!ref.whole_page) ref.label = SampleClass(cfg.class_weights, rng);
    } else {
      ref.whole_page = pending.whole_page;
      ref.label = pending.label;
    }
    ref.index = ref.whole_page
                    ? static_cast<size_t>(rng.UniformIndex(bank.whole_pages().size()))
                    : SampleCropIndex(bank, ref.label, rng);
    const Crop& crop = Lookup(bank, ref);
    const Fit fit = FitCrop(crop.width(), crop.height(), cfg);
    bool fits = fit.ok;
    if (fits && (x + fit.w > right || y + fit.h > bottom)) {
      if (x > left) {
        y += row_h + cfg.gap;
        x = left;
        row_h = 0;
        ++row;
      }
      fits = x + fit.w <= right && y + fit.h <= bottom;
    }
    if (!fits) {
      pending = ref;
      ++consecutive;
      ++plan.rejections;
      continue;
    }
    Placement p;
    p.crop = ref;
    p.target = BBox{static_cast<double>(x), static_cast<double>(y),
                    static_cast<double>(x + fit.w), static_cast<double>(y + fit.h)};
    p.scale = fit.scale;
    p.row = row;
    plan.placements.push_back(p);
    x += fit.w + cfg.gap;
    row_h = std::max(row_h, fit.h);
    consecutive = 0;
  }
  return plan;
}

RenderedPage Render(const PlacementPlan& plan, const CropBank& bank,
                    const GenConfig& cfg) {
  RenderedPage out{Image(cfg.canvas_w, cfg.canvas_h, 255), {}};
  for (const Placement& p : plan.placements) {
    const Crop& crop = Lookup(bank, p.crop);
    const int x = static_cast<int>(p.target.x_min);
    const int y = static_cast<int>(p.target.y_min);
    const int w = static_cast<int>(p.target.width());
    const int h = static_cast<int>(p.target.height());
    if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > cfg.canvas_w ||
        y + h > cfg.canvas_h) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("placement ({}, {}, {}, {}) is off the canvas",
                              p.target.x_min, p.target.y_min, p.target.x_max,
                              p.target.y_max));
    }
    if (w == crop.width() && h == crop.height()) {
      Paste(out.image, crop.pixels, x, y);
    } else {
      Paste(out.image, ResizeBilinear(crop.pixels, w, h), x, y);
    }
    // Multiply before dividing: full-extent edges land exactly on the target.
    const double cw = crop.width();
    const double ch = crop.height();
    for (const LayoutElement& e : crop.elements) {
      LayoutElement placed;
      placed.label = e.label;
      placed.source = e.source;
      placed.bbox = BBox{x + e.bbox.x_min * w / cw, y + e.bbox.y_min * h / ch,
                         x + e.bbox.x_max * w / cw, y + e.bbox.y_max * h / ch};
      out.elements.push_back(std::move(placed));
    }
  }
  return out;
}

std::vector<LayoutElement> InjectLabelNoise(std::vector<LayoutElement> elements,
                                            const NoiseConfig& noise,
                                            int canvas_w, int canvas_h,
                                            Rng& rng) {
  if (!noise.active()) return elements;
  const double w = canvas_w;
  const double h = canvas_h;
  for (LayoutElement& e : elements) {
    if (noise.class_flip_prob > 0 && rng.NextDouble() < noise.class_flip_prob &&
        IsKnownClass(e.label)) {
      // Skip over the current class in the canonical order.
      int k = static_cast<int>(rng.UniformIndex(kNumClasses - 1));
      if (k >= ClassIndex(e.label)) ++k;
      e.label = kAllClasses[k];
    }
    if (noise.bbox_jitter_px > 0) {
      const double j = noise.bbox_jitter_px;
      for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
        BBox b{std::clamp(e.bbox.x_min + rng.Symmetric(j), 0.0, w),
               std::clamp(e.bbox.y_min + rng.Symmetric(j), 0.0, h),
               std::clamp(e.bbox.x_max + rng.Symmetric(j), 0.0, w),
               std::clamp(e.bbox.y_max + rng.Symmetric(j), 0.0, h)};
        if (b.x_min < b.x_max && b.y_min < b.y_max) {
          e.bbox = b;
          break;
        }
      }
    }
  }
  return elements;
}

GeneratedPage GeneratePage(const CropBank& bank, const GenConfig& cfg,
                           int64_t page_index) {
  const uint64_t seed =
      SeedDerive(cfg.master_seed, static_cast<uint64_t>(page_index));
  GeneratedPage g;
  g.plan = SmartPlot(bank, cfg, seed);
  g.plan.page_index = page_index;
  g.page = Render(g.plan, bank, cfg);
  if (cfg.noise.active()) {
    Rng noise_rng(SeedDerive(seed, 1));
    g.page.elements = InjectLabelNoise(std::move(g.page.elements), cfg.noise,
                                       cfg.canvas_w, cfg.canvas_h, noise_rng);
  }
  return g;
}

namespace {

[[noreturn]] void RethrowWithPage(std::exception_ptr e, int64_t page) {
  try {
    std::rethrow_exception(e);
  } catch (const Error& err) {
    throw Error(err.code(), fmt::format("page {}: {}", page, err.detail()));
  } catch (const std::exception& err) {
    throw Error(ErrorCode::kIo, fmt::format("page {}: {}", page, err.what()));
  }
}

void RethrowFirst(const std::vector<std::exception_ptr>& errors) {
  for (size_t i = 0; i < errors.size(); ++i) {
    if (errors[i]) RethrowWithPage(errors[i], static_cast<int64_t>(i));
  }
}

int ThreadCount(int workers) {
  return workers > 0 ? workers : omp_get_max_threads();
}

struct PageRecord {
  AnnotatedPage page;
  PageSummary summary;
};

PageRecord ProducePage(const CropBank& bank, const GenConfig& cfg,
                       int64_t index, const fs::path& out_dir) {
  GeneratedPage g = GeneratePage(bank, cfg, index);
  const std::string name = fmt::format(kPageNameFormat, index);
  PageRecord r;
  r.page.image_path = name + ".png";
  r.page.width = cfg.canvas_w;
  r.page.height = cfg.canvas_h;
  r.page.image_id = index + 1;
  r.page.elements = std::move(g.page.elements);
  r.summary = PageSummary{g.plan.placements.size(), g.plan.rejections, g.plan.stop};
  WritePng(g.page.image, out_dir / "images" / r.page.image_path);
  if (cfg.write_yolo) {
    const std::string labels = FormatYoloLabels(r.page, ClassMap());
    std::ofstream out(out_dir / "labels" / (name + ".txt"), std::ios::binary);
    out << labels;
    if (!out) {
      throw Error(ErrorCode::kIo, fmt::format("cannot write labels for {}", name));
    }
  }
  return r;
}

void PrepareOutput(const CropBank& bank, const GenConfig& cfg,
                   const fs::path& out_dir) {
  ValidateConfig(cfg);
  CheckPlaceable(bank, cfg);
  try {
    fs::create_directories(out_dir / "images");
    if (cfg.write_yolo) fs::create_directories(out_dir / "labels");
  } catch (const fs::filesystem_error& e) {
    throw Error(ErrorCode::kIo, e.what());
  }
}

GenerationResult Finish(std::vector<PageRecord>&& records, const CropBank& bank,
                        const GenConfig& cfg, const fs::path& out_dir) {
  GenerationResult result;
  int64_t next_annotation = 1;
  for (PageRecord& r : records) {
    for (LayoutElement& e : r.page.elements) e.annotation_id = next_annotation++;
    result.dataset.pages.push_back(std::move(r.page));
    result.pages.push_back(r.summary);
  }
  if (cfg.write_coco) {
    // COCO file names are relative to the directory holding the JSON file.
    Dataset coco = result.dataset;
    for (AnnotatedPage& page : coco.pages) page.image_path = "images/" + page.image_path;
    WriteCoco(coco, out_dir / "annotations.json");
  }
  WriteJson(GenerationReportJson(cfg, bank, result), out_dir / "report.json");
  return result;
}

}  // namespace

std::vector<GeneratedPage> ComposePages(const CropBank& bank,
                                        const GenConfig& cfg, int workers) {
  ValidateConfig(cfg);
  const long n = cfg.page_count;
  std::vector<GeneratedPage> pages(static_cast<size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(ThreadCount(workers))
  for (long i = 0; i < n; ++i) {
    try {
      pages[i] = GeneratePage(bank, cfg, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  RethrowFirst(errors);
  return pages;
}

std::vector<GeneratedPage> ComposePagesSerial(const CropBank& bank,
                                              const GenConfig& cfg) {
  ValidateConfig(cfg);
  std::vector<GeneratedPage> pages;
  pages.reserve(static_cast<size_t>(cfg.page_count));
  for (int64_t i = 0; i < cfg.page_count; ++i) {
    try {
      pages.push_back(GeneratePage(bank, cfg, i));
    } catch (...) {
      RethrowWithPage(std::current_exception(), i);
    }
  }
  return pages;
}

GenerationResult GenerateDataset(const CropBank& bank, const GenConfig& cfg,
                                 const fs::path& out_dir, int workers) {
  PrepareOutput(bank, cfg, out_dir);
  const long n = cfg.page_count;
  std::vector<PageRecord> records(static_cast<size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(ThreadCount(workers))
  for (long i = 0; i < n; ++i) {
    try {
      records[i] = ProducePage(bank, cfg, i, out_dir);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  RethrowFirst(errors);
  return Finish(std::move(records), bank, cfg, out_dir);
}

GenerationResult GenerateDatasetSerial(const CropBank& bank,
                                       const GenConfig& cfg,
                                       const fs::path& out_dir) {
  PrepareOutput(bank, cfg, out_dir);
  std::vector<PageRecord> records;
  records.reserve(static_cast<size_t>(cfg.page_count));
  for (int64_t i = 0; i < cfg.page_count; ++i) {
    try {
      records.push_back(ProducePage(bank, cfg, i, out_dir));
    } catch (...) {
      RethrowWithPage(std::current_exception(), i);
    }
  }
  return Finish(std::move(records), bank, cfg, out_dir);
}

}  // namespace ranlay
