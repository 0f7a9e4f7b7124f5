/*
 * Copyright 2026 The hdrelight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HDRELIGHT_IMAGES_HPP
#define HDRELIGHT_IMAGES_HPP

#include <cstdint>
#include <vector>

#include "hdrelight/common.hpp"

namespace hdrelight {

/// 8-bit raster with 1 (gray / mask), 3 (RGB) or 4 (RGBA) interleaved channels.
struct LdrImage {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> codes;

  LdrImage() = default;
  LdrImage(int w, int h, int c, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y, int c) {
    return codes[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return codes[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool operator==(const LdrImage&) const = default;
};

/// Camera-space unit normals (+X right, +Y up, +Z toward the camera).
/// Invalid pixels store the zero vector and valid == 0.
struct NormalMap {
  Raster<Vec3f> normals;
  Raster<std::uint8_t> valid;

  NormalMap() = default;
  NormalMap(int width, int height)
      : normals(width, height, Vec3f{}), valid(width, height, std::uint8_t{0}) {}

  int width() const noexcept { return normals.width(); }
  int height() const noexcept { return normals.height(); }

  void set(int x, int y, const Vec3f& n) {
    normals.at(x, y) = n;
    valid.at(x, y) = 1;
  }
  void invalidate(int x, int y) {
    normals.at(x, y) = {};
    valid.at(x, y) = 0;
  }
  bool is_valid(int x, int y) const { return valid.at(x, y) != 0; }
};

}  // namespace hdrelight

#endif  // HDRELIGHT_IMAGES_HPP
