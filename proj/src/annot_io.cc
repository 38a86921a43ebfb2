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
#include "ranlay/annot_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "ranlay/error.h"
#include "ranlay/raster.h"

namespace ranlay {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<double> ParseDouble(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<long long> ParseInt(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits one CSV record. Double-quoted fields may contain commas and "".
// Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> SplitCsv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool field_was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && Trim(cur).empty() && !field_was_quoted) {
      cur.clear();
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(field_was_quoted ? cur : std::string(Trim(cur)));
      cur.clear();
      field_was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(field_was_quoted ? cur : std::string(Trim(cur)));
  return fields;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos &&
      Trim(s).size() == s.size()) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Applies the page-border policy: inside passes, overshoot up to
// kClampTolerancePx is clamped with a warning, more is rejected.
BBox FitToPage(const BBox& b, int width, int height, std::string_view where,
               Warnings* warnings) {
  if (InsideCanvas(b, width, height)) return b;
  const double tol = kClampTolerancePx;
  if (b.x_min < -tol || b.y_min < -tol || b.x_max > width + tol ||
      b.y_max > height + tol) {
    throw Error(ErrorCode::kBoxOutOfPage,
                fmt::format("{}: box ({}, {}, {}, {}) exceeds {}x{} page", where,
                            b.x_min, b.y_min, b.x_max, b.y_max, width, height));
  }
  BBox c{std::max(b.x_min, 0.0), std::max(b.y_min, 0.0),
         std::min(b.x_max, static_cast<double>(width)),
         std::min(b.y_max, static_cast<double>(height))};
  if (!(c.x_min < c.x_max && c.y_min < c.y_max)) {
    throw Error(ErrorCode::kNegativeOrInvertedBox,
                fmt::format("{}: box has no area after clamping", where));
  }
  if (warnings) {
    warnings->push_back(fmt::format("{}: box clamped to {}x{} page", where,
                                    width, height));
  }
  return c;
}

std::string FormatNumber(double v) { return fmt::format("{}", v); }

std::string StemOf(const std::string& image_path) {
  return fs::path(image_path).stem().string();
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifest

Dataset ParseManifestText(std::string_view text, std::string_view source_name,
                          Warnings* warnings) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  Dataset d;
  std::unordered_map<std::string, size_t> page_of;
  bool header_seen = false;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = fmt::format("{}:{}", source_name, line_no);
    auto fields = SplitCsv(line);
    if (!fields) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: unterminated quoted field", where));
    }
    if (!header_seen) {
      bool ok = fields->size() == kManifestColumns.size();
      for (size_t i = 0; ok && i < fields->size(); ++i) {
        ok = Lower((*fields)[i]) == kManifestColumns[i];
      }
      if (!ok) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("{}: header must be {}", where,
                                fmt::join(kManifestColumns, ",")));
      }
      header_seen = true;
      continue;
    }
    if (fields->size() != kManifestColumns.size()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: expected {} columns, got {}", where,
                              kManifestColumns.size(), fields->size()));
    }
    const auto& f = *fields;
    if (f[0].empty()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: empty image_path", where));
    }
    int dims[2];
    for (int k = 0; k < 2; ++k) {
      const std::string& s = f[1 + k];
      if (Trim(s).empty()) {
        throw Error(ErrorCode::kMissingImageDimension,
                    fmt::format("{}: missing {}", where, kManifestColumns[1 + k]));
      }
      auto v = ParseInt(s);
      if (!v) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("{}: {} '{}' is not an integer", where,
                                kManifestColumns[1 + k], s));
      }
      if (*v <= 0 || *v > (1 << 20)) {
        throw Error(ErrorCode::kMissingImageDimension,
                    fmt::format("{}: {} must be positive, got {}", where,
                                kManifestColumns[1 + k], *v));
      }
      dims[k] = static_cast<int>(*v);
    }
    auto label = ParseClassName(Trim(f[3]));
    if (!label) {
      throw Error(ErrorCode::kUnknownClassLabel,
                  fmt::format("{}: unknown class label '{}'", where, f[3]));
    }
    double coords[4];
    for (int k = 0; k < 4; ++k) {
      auto v = ParseDouble(f[4 + k]);
      if (!v) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("{}: {} '{}' is not a finite number", where,
                                kManifestColumns[4 + k], f[4 + k]));
      }
      coords[k] = *v;
    }
    BBox box{coords[0], coords[1], coords[2], coords[3]};
    if (box.x_max <= box.x_min || box.y_max <= box.y_min ||
        box.x_min < -kClampTolerancePx || box.y_min < -kClampTolerancePx) {
      throw Error(ErrorCode::kNegativeOrInvertedBox,
                  fmt::format("{}: box ({}, {}, {}, {}) is negative or inverted",
                              where, box.x_min, box.y_min, box.x_max, box.y_max));
    }
    box = FitToPage(box, dims[0], dims[1], where, warnings);

    auto [it, inserted] = page_of.try_emplace(f[0], d.pages.size());
    if (inserted) {
      AnnotatedPage page;
      page.image_path = f[0];
      page.width = dims[0];
      page.height = dims[1];
      d.pages.push_back(std::move(page));
    }
    AnnotatedPage& page = d.pages[it->second];
    if (page.width != dims[0] || page.height != dims[1]) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: dimensions {}x{} disagree with earlier {}x{} "
                              "for {}",
                              where, dims[0], dims[1], page.width, page.height,
                              page.image_path));
    }
    page.elements.push_back(LayoutElement{box, *label, std::nullopt, 0});
  }
  if (!header_seen) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}:1: missing header row", source_name));
  }
  return d;
}

Dataset ParseManifest(const fs::path& csv_path, Warnings* warnings) {
  return ParseManifestText(ReadFile(csv_path), csv_path.string(), warnings);
}

std::string FormatManifest(const Dataset& d) {
  std::string out = fmt::format("{}\n", fmt::join(kManifestColumns, ","));
  for (const auto& page : d.pages) {
    const std::string path = CsvField(page.image_path);
    for (const auto& e : page.elements) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", path, page.width,
                         page.height, ClassName(e.label),
                         FormatNumber(e.bbox.x_min), FormatNumber(e.bbox.y_min),
                         FormatNumber(e.bbox.x_max), FormatNumber(e.bbox.y_max));
    }
  }
  return out;
}

void WriteManifest(const Dataset& d, const fs::path& csv_path) {
  WriteFile(csv_path, FormatManifest(d));
}

// ---------------------------------------------------------------------------
// COCO

namespace {

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: missing field '{}'", where, key));
  }
  return obj.at(key);
}

int64_t IntField(const json& obj, const char* key, const std::string& where) {
  const json& v = Field(obj, key, where);
  if (v.is_number_integer()) return v.get<int64_t>();
  if (v.is_number_float()) {
    double x = v.get<double>();
    if (std::floor(x) == x && std::isfinite(x)) return static_cast<int64_t>(x);
  }
  throw Error(ErrorCode::kMalformedRow,
              fmt::format("{}: field '{}' must be an integer", where, key));
}

json ParseJson(std::string_view text, std::string_view source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: {}", source_name, e.what()));
  }
}

BBox CocoBoxToCorners(const json& bbox, const std::string& where) {
  if (!bbox.is_array() || bbox.size() != 4) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: bbox must be [x, y, w, h]", where));
  }
  double v[4];
  for (int k = 0; k < 4; ++k) {
    if (!bbox[k].is_number() || !std::isfinite(bbox[k].get<double>())) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: bbox entries must be finite numbers", where));
    }
    v[k] = bbox[k].get<double>();
  }
  if (v[2] <= 0 || v[3] <= 0) {
    throw Error(ErrorCode::kNonPositiveBoxDims,
                fmt::format("{}: bbox width/height must be positive, got {}x{}",
                            where, v[2], v[3]));
  }
  return BBox{v[0], v[1], v[0] + v[2], v[1] + v[3]};
}

}  // namespace

Dataset ParseCocoText(std::string_view text, std::string_view source_name,
                      const CocoReadOptions& options, Warnings* warnings) {
  const json root = ParseJson(text, source_name);
  const std::string src(source_name);
  Dataset d;
  std::unordered_map<int64_t, size_t> page_of;
  const json& images = Field(root, "images", src);
  if (!images.is_array()) {
    throw Error(ErrorCode::kMalformedRow, fmt::format("{}: images must be an array", src));
  }
  for (size_t i = 0; i < images.size(); ++i) {
    const std::string where = fmt::format("{}: images[{}]", src, i);
    const json& im = images[i];
    AnnotatedPage page;
    page.image_id = IntField(im, "id", where);
    const json& name = Field(im, "file_name", where);
    if (!name.is_string()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: file_name must be a string", where));
    }
    page.image_path = name.get<std::string>();
    if (!im.contains("width") || !im.contains("height")) {
      throw Error(ErrorCode::kMissingImageDimension,
                  fmt::format("{}: missing width/height", where));
    }
    int64_t w = IntField(im, "width", where);
    int64_t h = IntField(im, "height", where);
    if (w <= 0 || h <= 0) {
      throw Error(ErrorCode::kMissingImageDimension,
                  fmt::format("{}: dimensions must be positive", where));
    }
    page.width = static_cast<int>(w);
    page.height = static_cast<int>(h);
    if (!page_of.emplace(page.image_id, d.pages.size()).second) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: duplicate image id {}", where, page.image_id));
    }
    d.pages.push_back(std::move(page));
  }

  std::unordered_map<int64_t, LayoutClass> class_of_category;
  const json& categories = Field(root, "categories", src);
  if (!categories.is_array()) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: categories must be an array", src));
  }
  for (size_t i = 0; i < categories.size(); ++i) {
    const std::string where = fmt::format("{}: categories[{}]", src, i);
    CocoCategory cat;
    cat.id = IntField(categories[i], "id", where);
    const json& name = Field(categories[i], "name", where);
    if (!name.is_string()) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: name must be a string", where));
    }
    cat.name = name.get<std::string>();
    std::optional<LayoutClass> label;
    if (auto it = options.aliases.find(Lower(cat.name)); it != options.aliases.end()) {
      label = it->second;
    } else {
      label = ParseClassName(cat.name);
    }
    if (!label) {
      throw Error(ErrorCode::kUnmappableCategory,
                  fmt::format("{}: category '{}' maps to no layout class", where,
                              cat.name));
    }
    cat.label = *label;
    if (!class_of_category.emplace(cat.id, cat.label).second) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: duplicate category id {}", where, cat.id));
    }
    d.coco_categories.push_back(std::move(cat));
  }

  const json& annotations = Field(root, "annotations", src);
  if (!annotations.is_array()) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: annotations must be an array", src));
  }
  for (size_t i = 0; i < annotations.size(); ++i) {
    const std::string where = fmt::format("{}: annotations[{}]", src, i);
    const json& a = annotations[i];
    int64_t image_id = IntField(a, "image_id", where);
    auto page_it = page_of.find(image_id);
    if (page_it == page_of.end()) {
      throw Error(ErrorCode::kDanglingImageId,
                  fmt::format("{}: image_id {} matches no image", where, image_id));
    }
    int64_t category_id = IntField(a, "category_id", where);
    auto cat_it = class_of_category.find(category_id);
    if (cat_it == class_of_category.end()) {
      throw Error(ErrorCode::kUnmappableCategory,
                  fmt::format("{}: category_id {} is not declared", where,
                              category_id));
    }
    AnnotatedPage& page = d.pages[page_it->second];
    BBox box = CocoBoxToCorners(Field(a, "bbox", where), where);
    if (box.x_min < -kClampTolerancePx || box.y_min < -kClampTolerancePx) {
      throw Error(ErrorCode::kNegativeOrInvertedBox,
                  fmt::format("{}: negative bbox origin", where));
    }
    box = FitToPage(box, page.width, page.height, where, warnings);
    LayoutElement e;
    e.bbox = box;
    e.label = cat_it->second;
    e.annotation_id = a.contains("id") ? IntField(a, "id", where) : 0;
    page.elements.push_back(std::move(e));
  }
  return d;
}

Dataset ReadCoco(const fs::path& json_path, const CocoReadOptions& options,
                 Warnings* warnings) {
  return ParseCocoText(ReadFile(json_path), json_path.string(), options,
                       warnings);
}

std::string FormatCoco(const Dataset& d) {
  std::vector<CocoCategory> categories = d.coco_categories;
  if (categories.empty()) {
    for (LayoutClass c : kAllClasses) {
      categories.push_back(
          {d.class_map.IdOf(c) + 1, Lower(ClassName(c)), c});
    }
  }
  std::array<std::optional<int64_t>, kNumClasses> category_for;
  int64_t max_cat = 0;
  for (const auto& cat : categories) {
    max_cat = std::max(max_cat, cat.id);
    if (!category_for[ClassIndex(cat.label)]) category_for[ClassIndex(cat.label)] = cat.id;
  }
  for (LayoutClass c : kAllClasses) {
    if (!category_for[ClassIndex(c)]) {
      bool used = false;
      for (const auto& p : d.pages) {
        for (const auto& e : p.elements) used = used || e.label == c;
      }
      if (used) {
        categories.push_back({++max_cat, Lower(ClassName(c)), c});
        category_for[ClassIndex(c)] = max_cat;
      }
    }
  }

  // Assigned ids are kept; missing ones continue after the largest.
  int64_t next_image = 1;
  int64_t next_ann = 1;
  for (const auto& p : d.pages) {
    next_image = std::max(next_image, p.image_id + 1);
    for (const auto& e : p.elements) next_ann = std::max(next_ann, e.annotation_id + 1);
  }

  json images = json::array();
  json annotations = json::array();
  for (const auto& p : d.pages) {
    int64_t image_id = p.image_id > 0 ? p.image_id : next_image++;
    images.push_back({{"id", image_id},
                      {"file_name", p.image_path},
                      {"width", p.width},
                      {"height", p.height}});
    for (const auto& e : p.elements) {
      const double w = e.bbox.width();
      const double h = e.bbox.height();
      annotations.push_back(
          {{"id", e.annotation_id > 0 ? e.annotation_id : next_ann++},
           {"image_id", image_id},
           {"category_id", *category_for[ClassIndex(e.label)]},
           {"bbox", {e.bbox.x_min, e.bbox.y_min, w, h}},
           {"area", w * h},
           {"iscrowd", 0}});
    }
  }
  json cats = json::array();
  for (const auto& c : categories) cats.push_back({{"id", c.id}, {"name", c.name}});
  json root = {{"images", std::move(images)},
               {"categories", std::move(cats)},
               {"annotations", std::move(annotations)}};
  return root.dump(1) + "\n";
}

void WriteCoco(const Dataset& d, const fs::path& json_path) {
  WriteFile(json_path, FormatCoco(d));
}

// ---------------------------------------------------------------------------
// YOLO

std::string FormatYoloLine(const YoloBox& y) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f %.6f", y.class_id, y.cx,
                y.cy, y.w, y.h);
  return buf;
}

std::string FormatYoloLabels(const AnnotatedPage& page, const ClassMap& map) {
  std::string out;
  for (const auto& e : page.elements) {
    out += FormatYoloLine(
        ToYolo(e.bbox, map.IdOf(e.label), page.width, page.height));
    out.push_back('\n');
  }
  return out;
}

namespace {

struct YoloRecord {
  LayoutClass label;
  BBox bbox;
  double confidence = 1.0;
};

// Parses label lines with 5 columns, or 6 when `with_confidence`.
std::vector<YoloRecord> ParseYoloRecords(std::string_view text,
                                         std::string_view source_name,
                                         int width, int height,
                                         const ClassMap& class_map,
                                         bool with_confidence) {
  std::vector<YoloRecord> out;
  size_t line_no = 0;
  size_t pos = 0;
  const size_t expected = with_confidence ? 6 : 5;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = fmt::format("{}:{}", source_name, line_no);
    std::vector<std::string_view> tok;
    size_t p = 0;
    while (p < line.size()) {
      while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
      size_t q = p;
      while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
      if (q > p) tok.push_back(line.substr(p, q - p));
      p = q;
    }
    if (tok.size() != expected) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: expected {} fields, got {}", where, expected,
                              tok.size()));
    }
    auto id = ParseInt(tok[0]);
    if (!id) {
      throw Error(ErrorCode::kMalformedRow,
                  fmt::format("{}: class id '{}' is not an integer", where, tok[0]));
    }
    auto label = class_map.ClassOf(static_cast<int>(*id));
    if (!label || *id < 0 || *id > 1'000'000) {
      throw Error(ErrorCode::kUnknownClassId,
                  fmt::format("{}: unknown class id {}", where, *id));
    }
    double v[5];
    for (size_t k = 1; k < expected; ++k) {
      auto x = ParseDouble(tok[k]);
      if (!x) {
        throw Error(ErrorCode::kMalformedRow,
                    fmt::format("{}: '{}' is not a finite number", where, tok[k]));
      }
      v[k - 1] = *x;
    }
    YoloBox y{static_cast<int>(*id), v[0], v[1], v[2], v[3]};
    if (!IsValid(y)) {
      throw Error(ErrorCode::kOutOfRangeNormalizedValue,
                  fmt::format("{}: normalized box ({}, {}, {}, {}) leaves the "
                              "unit square",
                              where, y.cx, y.cy, y.w, y.h));
    }
    YoloRecord r;
    r.label = *label;
    BBox b = FromYolo(y, width, height);
    // Quantization overshoot is at most kYoloTolerance of the canvas.
    r.bbox = BBox{std::max(b.x_min, 0.0), std::max(b.y_min, 0.0),
                  std::min(b.x_max, static_cast<double>(width)),
                  std::min(b.y_max, static_cast<double>(height))};
    if (with_confidence) {
      r.confidence = v[4];
      if (r.confidence < 0 || r.confidence > 1) {
        throw Error(ErrorCode::kOutOfRangeNormalizedValue,
                    fmt::format("{}: confidence {} outside [0, 1]", where,
                                r.confidence));
      }
    }
    out.push_back(r);
  }
  return out;
}

std::map<std::string, fs::path> FilesByStem(const fs::path& dir,
                                            std::string_view ext) {
  std::map<std::string, fs::path> out;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, fmt::format("{} is not a directory", dir.string()));
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (Lower(entry.path().extension().string()) != ext) continue;
    out.emplace(entry.path().stem().string(), entry.path());
  }
  return out;
}

}  // namespace

std::vector<LayoutElement> ParseYoloLabels(std::string_view text,
                                           std::string_view source_name,
                                           int width, int height,
                                           const ClassMap& class_map) {
  std::vector<LayoutElement> out;
  for (const auto& r : ParseYoloRecords(text, source_name, width, height,
                                        class_map, false)) {
    out.push_back(LayoutElement{r.bbox, r.label, std::nullopt, 0});
  }
  return out;
}

Dataset ReadYoloLabels(const fs::path& labels_dir, const fs::path& images_dir,
                       const ClassMap& class_map) {
  auto images = FilesByStem(images_dir, ".png");
  auto labels = FilesByStem(labels_dir, ".txt");
  for (const auto& [stem, path] : labels) {
    if (!images.count(stem)) {
      throw Error(ErrorCode::kImageLabelMismatch,
                  fmt::format("{}: no image {}.png in {}", path.string(), stem,
                              images_dir.string()));
    }
  }
  Dataset d;
  d.class_map = class_map;
  for (const auto& [stem, image_path] : images) {
    auto label_it = labels.find(stem);
    if (label_it == labels.end()) {
      throw Error(ErrorCode::kImageLabelMismatch,
                  fmt::format("{}: no label file {}.txt in {}",
                              image_path.string(), stem, labels_dir.string()));
    }
    AnnotatedPage page;
    page.image_path = image_path.filename().string();
    auto [w, h] = ReadPngSize(image_path);
    page.width = w;
    page.height = h;
    page.elements = ParseYoloLabels(ReadFile(label_it->second),
                                    label_it->second.string(), w, h, class_map);
    d.pages.push_back(std::move(page));
  }
  return d;
}

void WriteYoloLabels(const Dataset& d, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::set<std::string> stems;
  for (const auto& page : d.pages) {
    const std::string stem = StemOf(page.image_path);
    if (!stems.insert(stem).second) {
      throw Error(ErrorCode::kImageLabelMismatch,
                  fmt::format("two pages share the label stem '{}'", stem));
    }
    WriteFile(out_dir / (stem + ".txt"), FormatYoloLabels(page, d.class_map));
  }
}

std::vector<DetectionPage> ReadYoloPredictions(const fs::path& labels_dir,
                                               const Dataset& reference) {
  auto labels = FilesByStem(labels_dir, ".txt");
  std::vector<DetectionPage> out;
  std::set<std::string> used;
  for (const auto& page : reference.pages) {
    DetectionPage dp;
    dp.image_path = page.image_path;
    const std::string stem = StemOf(page.image_path);
    if (auto it = labels.find(stem); it != labels.end()) {
      used.insert(stem);
      for (const auto& r : ParseYoloRecords(ReadFile(it->second),
                                            it->second.string(), page.width,
                                            page.height, reference.class_map,
                                            true)) {
        dp.detections.push_back(Detection{r.bbox, r.label, r.confidence});
      }
    }
    out.push_back(std::move(dp));
  }
  for (const auto& [stem, path] : labels) {
    if (!used.count(stem)) out.push_back(DetectionPage{stem, {}});
  }
  return out;
}

std::vector<DetectionPage> ReadCocoResults(const fs::path& json_path,
                                           const Dataset& reference,
                                           Warnings* warnings) {
  const std::string src = json_path.string();
  const json root = ParseJson(ReadFile(json_path), src);
  if (!root.is_array()) {
    throw Error(ErrorCode::kMalformedRow,
                fmt::format("{}: results must be a JSON array", src));
  }
  std::unordered_map<int64_t, size_t> page_of;
  std::vector<DetectionPage> out;
  for (size_t i = 0; i < reference.pages.size(); ++i) {
    const auto& p = reference.pages[i];
    page_of.emplace(p.image_id > 0 ? p.image_id : static_cast<int64_t>(i + 1), i);
    out.push_back(DetectionPage{p.image_path, {}});
  }
  std::unordered_map<int64_t, LayoutClass> class_of_category;
  if (reference.coco_categories.empty()) {
    for (LayoutClass c : kAllClasses) {
      class_of_category[reference.class_map.IdOf(c) + 1] = c;
    }
  } else {
    for (const auto& c : reference.coco_categories) class_of_category[c.id] = c.label;
  }
  size_t unknown_images = 0;
  for (size_t i = 0; i < root.size(); ++i) {
    const std::string where = fmt::format("{}: [{}]", src, i);
    const json& r = root[i];
    int64_t image_id = IntField(r, "image_id", where);
    auto page_it = page_of.find(image_id);
    if (page_it == page_of.end()) {
      ++unknown_images;
      continue;
    }
    int64_t category_id = IntField(r, "category_id", where);
    auto cat_it = class_of_category.find(category_id);
    if (cat_it == class_of_category.end()) {
      throw Error(ErrorCode::kUnmappableCategory,
                  fmt::format("{}: category_id {} is not a ground-truth category",
                              where, category_id));
    }
    const json& score = Field(r, "score", where);
    if (!score.is_number() || score.get<double>() < 0 || score.get<double>() > 1) {
      throw Error(ErrorCode::kOutOfRangeNormalizedValue,
                  fmt::format("{}: score must be a number in [0, 1]", where));
    }
    const AnnotatedPage& page = reference.pages[page_it->second];
    BBox box = CocoBoxToCorners(Field(r, "bbox", where), where);
    box = BBox{std::max(box.x_min, 0.0), std::max(box.y_min, 0.0),
               std::min(box.x_max, static_cast<double>(page.width)),
               std::min(box.y_max, static_cast<double>(page.height))};
    if (!IsValid(box)) continue;
    out[page_it->second].detections.push_back(
        Detection{box, cat_it->second, score.get<double>()});
  }
  if (unknown_images > 0 && warnings) {
    warnings->push_back(fmt::format(
        "{}: {} detections reference image ids absent from the ground truth",
        src, unknown_images));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Format dispatch

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name) {
  const std::string n = Lower(name);
  if (n == "manifest" || n == "csv") return DatasetFormat::kManifest;
  if (n == "coco" || n == "json") return DatasetFormat::kCoco;
  if (n == "yolo") return DatasetFormat::kYolo;
  return std::nullopt;
}

DatasetFormat DetectFormat(const fs::path& path) {
  if (fs::is_directory(path)) return DatasetFormat::kYolo;
  const std::string ext = Lower(path.extension().string());
  if (ext == ".csv") return DatasetFormat::kManifest;
  if (ext == ".json") return DatasetFormat::kCoco;
  if (ext.empty()) return DatasetFormat::kYolo;
  throw Error(ErrorCode::kInvalidConfig,
              fmt::format("cannot infer dataset format of {}; pass --format",
                          path.string()));
}

Dataset LoadDataset(const fs::path& path, std::optional<DatasetFormat> format,
                    const CocoReadOptions& coco_options, Warnings* warnings) {
  switch (format ? *format : DetectFormat(path)) {
    case DatasetFormat::kManifest:
      return ParseManifest(path, warnings);
    case DatasetFormat::kCoco:
      return ReadCoco(path, coco_options, warnings);
    case DatasetFormat::kYolo:
      return ReadYoloLabels(path / "labels", path / "images");
  }
  return {};
}

fs::path DefaultImageRoot(const fs::path& path, DatasetFormat format) {
  if (format == DatasetFormat::kYolo) return path / "images";
  return path.has_parent_path() ? path.parent_path() : fs::path(".");
}

}  // namespace ranlay
