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
#include "ranlay/raster.h"

#include <png.h>

#include <csetjmp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

#include "ranlay/error.h"

namespace ranlay {

namespace {

png_image BeginRead(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    std::string why = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::kImageUnreadable,
                fmt::format("{}: {}", path.string(), why));
  }
  return img;
}

}  // namespace

Image ReadPng(const std::filesystem::path& path) {
  png_image img = BeginRead(path);
  img.format = PNG_FORMAT_RGB;
  Image out(static_cast<int>(img.width), static_cast<int>(img.height));
  if (!png_image_finish_read(&img, nullptr, out.rgb.data(), 0, nullptr)) {
    std::string why = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::kImageUnreadable,
                fmt::format("{}: {}", path.string(), why));
  }
  return out;
}

std::pair<int, int> ReadPngSize(const std::filesystem::path& path) {
  png_image img = BeginRead(path);
  std::pair<int, int> size{static_cast<int>(img.width),
                           static_cast<int>(img.height)};
  png_image_free(&img);
  return size;
}

namespace {

void AppendBytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void NoFlush(png_structp) {}

}  // namespace

std::vector<uint8_t> EncodePng(const Image& image) {
  std::vector<uint8_t> bytes;
  std::vector<png_bytep> rows(static_cast<size_t>(image.height));
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.pixel(0, y));
  }
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::kIo, "png encode: out of memory");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, fmt::format("png encode failed for {}x{} image",
                                            image.width, image.height));
  }
  png_set_write_fn(png, &bytes, AppendBytes, NoFlush);
  png_set_compression_level(png, 2);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE,
               PNG_FILTER_TYPE_BASE);
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return bytes;
}

void WritePng(const Image& image, const std::filesystem::path& path) {
  std::vector<uint8_t> bytes = EncodePng(image);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
}

Image CropImage(const Image& image, int x, int y, int w, int h) {
  Image out(w, h);
  const size_t row_bytes = static_cast<size_t>(w) * 3;
  for (int r = 0; r < h; ++r) {
    std::memcpy(out.pixel(0, r), image.pixel(x, y + r), row_bytes);
  }
  return out;
}

Image ResizeBilinear(const Image& image, int w, int h) {
  if (w == image.width && h == image.height) return image;
  Image out(w, h);
  const double sx_scale = static_cast<double>(image.width) / w;
  const double sy_scale = static_cast<double>(image.height) / h;
  const int max_x = image.width - 1;
  const int max_y = image.height - 1;
  for (int y = 0; y < h; ++y) {
    double sy = std::clamp((y + 0.5) * sy_scale - 0.5, 0.0,
                           static_cast<double>(max_y));
    int y0 = static_cast<int>(sy);
    int y1 = std::min(y0 + 1, max_y);
    double fy = sy - y0;
    for (int x = 0; x < w; ++x) {
      double sx = std::clamp((x + 0.5) * sx_scale - 0.5, 0.0,
                             static_cast<double>(max_x));
      int x0 = static_cast<int>(sx);
      int x1 = std::min(x0 + 1, max_x);
      double fx = sx - x0;
      const uint8_t* p00 = image.pixel(x0, y0);
      const uint8_t* p10 = image.pixel(x1, y0);
      const uint8_t* p01 = image.pixel(x0, y1);
      const uint8_t* p11 = image.pixel(x1, y1);
      uint8_t* dst = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) {
        double top = p00[c] + (p10[c] - p00[c]) * fx;
        double bottom = p01[c] + (p11[c] - p01[c]) * fx;
        double v = top + (bottom - top) * fy;
        dst[c] = static_cast<uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

void Paste(Image& dst, const Image& src, int x, int y) {
  const size_t row_bytes = static_cast<size_t>(src.width) * 3;
  for (int r = 0; r < src.height; ++r) {
    std::memcpy(dst.pixel(x, y + r), src.pixel(0, r), row_bytes);
  }
}

}  // namespace ranlay
