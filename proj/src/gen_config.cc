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
#include "ranlay/gen_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ranlay/error.h"

namespace ranlay {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
T Get(const json& j, const char* key, std::string_view src) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("{}: '{}' has the wrong type", src, key));
  }
}

int GetInt(const json& j, const char* key, std::string_view src) {
  if (!j.at(key).is_number_integer()) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("{}: '{}' must be an integer", src, key));
  }
  return Get<int>(j, key, src);
}

}  // namespace

GenConfig ParseGenConfig(std::string_view text, std::string_view source_name,
                         const GenConfig& base, bool* has_seed) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("{}: {}", source_name, e.what()));
  }
  if (!root.is_object()) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("{}: config must be a JSON object", source_name));
  }
  if (!root.contains("version") || !root["version"].is_number_integer() ||
      root["version"].get<int>() != kGenConfigVersion) {
    throw Error(ErrorCode::kInvalidConfig,
                fmt::format("{}: \"version\": {} is required", source_name,
                            kGenConfigVersion));
  }
  static const std::set<std::string> kKnown = {
      "version",        "canvas_w",      "canvas_h",     "gap",
      "margin",         "max_elements_per_page",        "max_rejections",
      "scale_to_fit",   "class_weights", "page_count",   "seed",
      "noise",          "min_crop_px",   "whole_page_prob", "output"};
  for (const auto& [key, value] : root.items()) {
    if (!kKnown.count(key)) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("{}: unknown key '{}'", source_name, key));
    }
  }
  GenConfig cfg = base;
  const std::string_view src = source_name;
  if (root.contains("canvas_w")) cfg.canvas_w = GetInt(root, "canvas_w", src);
  if (root.contains("canvas_h")) cfg.canvas_h = GetInt(root, "canvas_h", src);
  if (root.contains("gap")) cfg.gap = GetInt(root, "gap", src);
  if (root.contains("margin")) cfg.margin = GetInt(root, "margin", src);
  if (root.contains("max_elements_per_page")) {
    cfg.max_elements_per_page = GetInt(root, "max_elements_per_page", src);
  }
  if (root.contains("max_rejections")) {
    cfg.max_rejections = GetInt(root, "max_rejections", src);
  }
  if (root.contains("scale_to_fit")) cfg.scale_to_fit = Get<bool>(root, "scale_to_fit", src);
  if (root.contains("page_count")) cfg.page_count = GetInt(root, "page_count", src);
  if (root.contains("min_crop_px")) cfg.min_crop_px = GetInt(root, "min_crop_px", src);
  if (root.contains("whole_page_prob")) {
    cfg.whole_page_prob = Get<double>(root, "whole_page_prob", src);
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("{}: 'seed' must be a non-negative integer", src));
    }
    cfg.master_seed = root["seed"].get<uint64_t>();
    if (has_seed) *has_seed = true;
  }
  if (root.contains("class_weights")) {
    const json& w = root["class_weights"];
    std::array<double, kNumClasses> raw{};
    if (!w.is_object()) {
      throw Error(ErrorCode::kInvalidConfig,
                  fmt::format("{}: class_weights must map class names to weights", src));
    }
    for (const auto& [name, value] : w.items()) {
      auto c = ParseClassName(name);
      if (!c || !value.is_number()) {
        throw Error(ErrorCode::kInvalidConfig,
                    fmt::format("{}: bad class_weights entry '{}'", src, name));
      }
      raw[ClassIndex(*c)] = value.get<double>();
    }
    cfg.class_weights = ClassWeights::FromUnnormalized(raw);
  }
  if (root.contains("noise")) {
    const json& n = root["noise"];
    for (const auto& [key, value] : n.items()) {
      if (key == "class_flip_prob") {
        cfg.noise.class_flip_prob = Get<double>(n, "class_flip_prob", src);
      } else if (key == "bbox_jitter_px") {
        cfg.noise.bbox_jitter_px = Get<double>(n, "bbox_jitter_px", src);
      } else {
        throw Error(ErrorCode::kInvalidConfig,
                    fmt::format("{}: unknown key 'noise.{}'", src, key));
      }
    }
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    for (const auto& [key, value] : o.items()) {
      if (key == "yolo") {
        cfg.write_yolo = Get<bool>(o, "yolo", src);
      } else if (key == "coco") {
        cfg.write_coco = Get<bool>(o, "coco", src);
      } else {
        throw Error(ErrorCode::kInvalidConfig,
                    fmt::format("{}: unknown key 'output.{}'", src, key));
      }
    }
  }
  return cfg;
}

GenConfig LoadGenConfig(const fs::path& path, const GenConfig& base,
                        bool* has_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseGenConfig(ss.str(), path.string(), base, has_seed);
}

json GenConfigToJson(const GenConfig& cfg) {
  json weights = json::object();
  for (LayoutClass c : kAllClasses) {
    weights[std::string(ClassName(c))] = cfg.class_weights[c];
  }
  return {{"version", kGenConfigVersion},
          {"canvas_w", cfg.canvas_w},
          {"canvas_h", cfg.canvas_h},
          {"gap", cfg.gap},
          {"margin", cfg.margin},
          {"max_elements_per_page", cfg.max_elements_per_page},
          {"max_rejections", cfg.max_rejections},
          {"scale_to_fit", cfg.scale_to_fit},
          {"class_weights", std::move(weights)},
          {"page_count", cfg.page_count},
          {"seed", cfg.master_seed},
          {"noise",
           {{"class_flip_prob", cfg.noise.class_flip_prob},
            {"bbox_jitter_px", cfg.noise.bbox_jitter_px}}},
          {"min_crop_px", cfg.min_crop_px},
          {"whole_page_prob", cfg.whole_page_prob},
          {"output", {{"yolo", cfg.write_yolo}, {"coco", cfg.write_coco}}}};
}

}  // namespace ranlay
