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
#ifndef RANLAY_RASTER_H_
#define RANLAY_RASTER_H_

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace ranlay {

// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;

  Image() = default;
  Image(int w, int h, uint8_t fill = 255)
      : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, fill) {}

  uint8_t* pixel(int x, int y) {
    return rgb.data() + (static_cast<size_t>(y) * width + x) * 3;
  }
  const uint8_t* pixel(int x, int y) const {
    return rgb.data() + (static_cast<size_t>(y) * width + x) * 3;
  }

  bool operator==(const Image&) const = default;
};

// Any PNG colour type is converted to 8-bit RGB. Throws kImageUnreadable.
Image ReadPng(const std::filesystem::path& path);

// Width and height from the PNG header only.
std::pair<int, int> ReadPngSize(const std::filesystem::path& path);

// Output bytes depend only on the pixels.
std::vector<uint8_t> EncodePng(const Image& image);
void WritePng(const Image& image, const std::filesystem::path& path);

// Sub-raster [x, x+w) x [y, y+h); the rectangle must lie inside the image.
Image CropImage(const Image& image, int x, int y, int w, int h);

// Bilinear resampling with pixel centres at half-integers:
//   sx = (x + 0.5) * src_w / dst_w - 0.5, clamped to [0, src_w - 1]
// and likewise for y; channels are rounded half-up. Same-size resizing is
// an exact copy.
Image ResizeBilinear(const Image& image, int w, int h);

// Copies src into dst with its top-left corner at (x, y); src must fit.
void Paste(Image& dst, const Image& src, int x, int y);

}  // namespace ranlay

#endif  // RANLAY_RASTER_H_
