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
#include "ranlay/crop_bank.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ranlay/error.h"

namespace ranlay {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kBankFormatVersion = 1;
constexpr char kBankFormatName[] = "ranlay-crop-bank";

int RoundHalfUp(double v) { return static_cast<int>(std::floor(v + 0.5)); }

struct PageCrops {
  std::vector<Crop> crops;
  std::array<size_t, kNumClasses> skipped{};
  std::optional<Crop> whole_page;
};

PageCrops ExtractPage(const AnnotatedPage& page, const fs::path& image_root,
                      const BankOptions& options) {
  fs::path path(page.image_path);
  if (path.is_relative()) path = image_root / path;
  Image image = ReadPng(path);
  if (image.width != page.width || image.height != page.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("{}: raster is {}x{} but annotations say {}x{}",
                            path.string(), image.width, image.height,
                            page.width, page.height));
  }
  PageCrops out;
  for (const LayoutElement& e : page.elements) {
    auto [x, y, w, h] = RasterRect(e.bbox, page.width, page.height);
    if (w < options.min_crop_px || h < options.min_crop_px) {
      ++out.skipped[ClassIndex(e.label)];
      continue;
    }
    Crop crop;
    crop.pixels = CropImage(image, x, y, w, h);
    crop.label = e.label;
    crop.provenance = SourceRef{page.image_path, e.bbox};
    crop.elements.push_back(LayoutElement{
        BBox{0, 0, static_cast<double>(w), static_cast<double>(h)}, e.label,
        crop.provenance, 0});
    out.crops.push_back(std::move(crop));
  }
  if (options.include_whole_pages && !page.elements.empty()) {
    Crop whole;
    whole.label = page.elements.front().label;
    whole.provenance = SourceRef{
        page.image_path,
        BBox{0, 0, static_cast<double>(page.width), static_cast<double>(page.height)}};
    for (const LayoutElement& e : page.elements) {
      LayoutElement local = e;
      local.source = SourceRef{page.image_path, e.bbox};
      local.annotation_id = 0;
      whole.elements.push_back(std::move(local));
    }
    whole.pixels = std::move(image);
    out.whole_page = std::move(whole);
  }
  return out;
}

void Merge(CropBank& bank, PageCrops&& page) {
  for (Crop& c : page.crops) bank.Add(std::move(c));
  for (LayoutClass c : kAllClasses) bank.AddSkipped(c, page.skipped[ClassIndex(c)]);
  if (page.whole_page) bank.AddWholePage(std::move(*page.whole_page));
}

}  // namespace

ClassWeights::ClassWeights() {
  double total = 0;
  for (int64_t n : kReferenceClassCounts) total += static_cast<double>(n);
  for (int k = 0; k < kNumClasses; ++k) {
    w_[k] = static_cast<double>(kReferenceClassCounts[k]) / total;
  }
}

ClassWeights ClassWeights::FromUnnormalized(
    const std::array<double, kNumClasses>& w) {
  double total = 0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("class weight {} must be finite and >= 0", v));
    }
    total += v;
  }
  if (total <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "class weights are all zero");
  }
  ClassWeights out;
  // Already-normalized input (e.g. a config echoed from a report) is kept
  // bit-for-bit.
  const bool normalized = std::abs(total - 1.0) <= 1e-12;
  for (int k = 0; k < kNumClasses; ++k) out.w_[k] = normalized ? w[k] : w[k] / total;
  return out;
}

size_t CropBank::total() const {
  size_t n = 0;
  for (const auto& v : by_class_) n += v.size();
  return n;
}

size_t CropBank::total_skipped() const {
  size_t n = 0;
  for (size_t s : skipped_) n += s;
  return n;
}

std::array<int, 4> RasterRect(const BBox& b, int page_w, int page_h) {
  int x0 = std::clamp(RoundHalfUp(b.x_min), 0, page_w);
  int y0 = std::clamp(RoundHalfUp(b.y_min), 0, page_h);
  int x1 = std::clamp(RoundHalfUp(b.x_max), 0, page_w);
  int y1 = std::clamp(RoundHalfUp(b.y_max), 0, page_h);
  return {x0, y0, std::max(x1 - x0, 0), std::max(y1 - y0, 0)};
}

CropBank BuildBankSerial(const Dataset& d, const fs::path& image_root,
                         const BankOptions& options) {
  CropBank bank;
  for (const AnnotatedPage& page : d.pages) {
    Merge(bank, ExtractPage(page, image_root, options));
  }
  return bank;
}

CropBank BuildBank(const Dataset& d, const fs::path& image_root,
                   const BankOptions& options) {
  const long n = static_cast<long>(d.pages.size());
  std::vector<PageCrops> pages(d.pages.size());
  std::vector<std::exception_ptr> errors(d.pages.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      pages[i] = ExtractPage(d.pages[i], image_root, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  CropBank bank;
  for (PageCrops& p : pages) Merge(bank, std::move(p));
  return bank;
}

LayoutClass SampleClass(const ClassWeights& w, Rng& rng) {
  const double u = rng.NextDouble();
  double cumulative = 0;
  LayoutClass last_positive = LayoutClass::kText;
  for (LayoutClass c : kAllClasses) {
    if (w[c] <= 0) continue;
    cumulative += w[c];
    last_positive = c;
    if (u < cumulative) return c;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_positive;
}

size_t SampleCropIndex(const CropBank& bank, LayoutClass c, Rng& rng) {
  const size_t n = bank.count(c);
  if (n == 0) {
    throw Error(ErrorCode::kEmptyClass,
                fmt::format("crop bank has no {} crops", ClassName(c)));
  }
  return static_cast<size_t>(rng.UniformIndex(n));
}

// ---------------------------------------------------------------------------
// Cache

namespace {

json BoxJson(const BBox& b) { return json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

BBox BoxFromJson(const json& j) {
  return BBox{j.at(0).get<double>(), j.at(1).get<double>(),
              j.at(2).get<double>(), j.at(3).get<double>()};
}

LayoutClass ClassFromJson(const json& j) {
  auto c = ParseClassName(j.get<std::string>());
  if (!c) {
    throw Error(ErrorCode::kUnknownClassLabel,
                fmt::format("bank index: unknown class '{}'", j.get<std::string>()));
  }
  return *c;
}

json CropJson(const Crop& crop, const std::string& file) {
  json elements = json::array();
  for (const auto& e : crop.elements) {
    json el = {{"class", ClassName(e.label)}, {"bbox", BoxJson(e.bbox)}};
    if (e.source && *e.source != crop.provenance) {
      el["source_image"] = e.source->image_path;
      el["source_bbox"] = BoxJson(e.source->bbox);
    }
    elements.push_back(std::move(el));
  }
  return {{"file", file},
          {"class", ClassName(crop.label)},
          {"source_image", crop.provenance.image_path},
          {"source_bbox", BoxJson(crop.provenance.bbox)},
          {"elements", std::move(elements)}};
}

Crop CropFromJson(const json& j, const fs::path& dir) {
  Crop crop;
  crop.pixels = ReadPng(dir / j.at("file").get<std::string>());
  crop.label = ClassFromJson(j.at("class"));
  crop.provenance = SourceRef{j.at("source_image").get<std::string>(),
                              BoxFromJson(j.at("source_bbox"))};
  for (const auto& e : j.at("elements")) {
    LayoutElement el;
    el.label = ClassFromJson(e.at("class"));
    el.bbox = BoxFromJson(e.at("bbox"));
    el.source = crop.provenance;
    if (e.contains("source_bbox")) {
      el.source = SourceRef{e.value("source_image", crop.provenance.image_path),
                            BoxFromJson(e.at("source_bbox"))};
    }
    crop.elements.push_back(std::move(el));
  }
  return crop;
}

}  // namespace

void SaveBank(const CropBank& bank, const fs::path& dir) {
  fs::create_directories(dir / "crops");
  json crops = json::array();
  json skipped = json::object();
  size_t serial = 0;
  for (LayoutClass c : kAllClasses) {
    skipped[std::string(ClassName(c))] = bank.skipped(c);
    for (const Crop& crop : bank.crops(c)) {
      std::string file = fmt::format("crops/{:06d}.png", serial++);
      WritePng(crop.pixels, dir / file);
      crops.push_back(CropJson(crop, file));
    }
  }
  json pages = json::array();
  for (const Crop& crop : bank.whole_pages()) {
    std::string file = fmt::format("crops/page_{:06d}.png", pages.size());
    WritePng(crop.pixels, dir / file);
    pages.push_back(CropJson(crop, file));
  }
  json index = {{"format", kBankFormatName},
                {"version", kBankFormatVersion},
                {"skipped", std::move(skipped)},
                {"crops", std::move(crops)},
                {"whole_pages", std::move(pages)}};
  std::ofstream out(dir / "index.json", std::ios::binary);
  out << index.dump(1) << "\n";
  if (!out) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot write {}", (dir / "index.json").string()));
  }
}

CropBank LoadBank(const fs::path& dir) {
  const fs::path index_path = dir / "index.json";
  std::ifstream in(index_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", index_path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  CropBank bank;
  try {
    json index = json::parse(ss.str());
    if (index.at("format") != kBankFormatName ||
        index.at("version").get<int>() != kBankFormatVersion) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("{}: unsupported bank format", index_path.string()));
    }
    for (const auto& [name, n] : index.at("skipped").items()) {
      auto c = ParseClassName(name);
      if (!c) throw Error(ErrorCode::kUnknownClassLabel, name);
      bank.AddSkipped(*c, n.get<size_t>());
    }
    for (const auto& j : index.at("crops")) bank.Add(CropFromJson(j, dir));
    for (const auto& j : index.at("whole_pages")) bank.AddWholePage(CropFromJson(j, dir));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: {}", index_path.string(), e.what()));
  }
  return bank;
}

}  // namespace ranlay
