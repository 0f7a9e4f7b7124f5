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

#ifndef HDRELIGHT_HDR_IO_HPP
#define HDRELIGHT_HDR_IO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hdrelight/common.hpp"
#include "hdrelight/images.hpp"
#include "hdrelight/pq_codec.hpp"

namespace hdrelight::io {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// --- Radiance RGBE -----------------------------------------------------------

/// Shared-exponent encoding of one pixel, mantissas rounded to nearest.
std::array<std::uint8_t, 4> rgbe_encode(const Rgb& p);
/// (mantissa / 256) * 2^(e - 128); exponent 0 decodes to black.
Rgb rgbe_decode(const std::array<std::uint8_t, 4>& rgbe);

/// Parses `#?RADIANCE` / `#?RGBE` files with flat or new-style RLE
/// scanlines. Only the standard `-Y h +X w` orientation is accepted.
HdrImage read_radiance_hdr(ByteView bytes);
/// Emits RLE scanlines for widths in [8, 32767], flat scanlines otherwise.
Bytes write_radiance_hdr(const HdrImage& img);

// --- 8-bit rasters (netpbm P5 / P6 / P7) -------------------------------------

LdrImage read_ldr(ByteView bytes);
/// 1 channel -> P5, 3 -> P6, 4 -> P7 RGB_ALPHA.
Bytes write_ldr(const LdrImage& img);

LdrImage to_ldr(const pq::QuantizedHdrImage& q);
/// Requires a 3-channel image.
pq::QuantizedHdrImage to_quantized(const LdrImage& img);

/// Single-channel mask in [0,1]: gray codes / 255, or the alpha channel of RGBA.
AlphaMask mask_from_ldr(const LdrImage& img);
LdrImage mask_to_ldr(const AlphaMask& mask);

// --- Normal maps -------------------------------------------------------------

/// Accepts a little-endian colour portable float map ("PF", negative scale)
/// or a 16-bit P6 raster where [0, 65535] maps to [-1, 1]. Vectors within
/// 1e-2 of unit length are renormalized; anything else is flagged invalid.
NormalMap read_normal_map(ByteView bytes);
/// Portable float map, bottom row first as the format requires.
Bytes write_normal_map_pfm(const NormalMap& normals);
/// 16-bit P6 using (v + 1) / 2 per component.
Bytes write_normal_map_u16(const NormalMap& normals);

/// Raw float RGB raster as a colour portable float map.
Bytes write_pfm(const HdrImage& img);
HdrImage read_pfm(ByteView bytes);

// --- Files -------------------------------------------------------------------

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView bytes);

}  // namespace hdrelight::io

#endif  // HDRELIGHT_HDR_IO_HPP
