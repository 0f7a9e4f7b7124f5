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

#ifndef HDRELIGHT_PQ_CODEC_HPP
#define HDRELIGHT_PQ_CODEC_HPP

#include <array>
#include <cstdint>

#include "hdrelight/common.hpp"

namespace hdrelight::pq {

// SMPTE ST 2084 constants. c1 + c2 == 1 + c3, so the encoder maps 10000 cd/m²
// to exactly 1.0.
struct PqConstants {
  static constexpr double m1 = 0.1593017578125;
  static constexpr double m2 = 78.84375;
  static constexpr double c1 = 0.8359375;
  static constexpr double c2 = 18.8515625;
  static constexpr double c3 = 18.6875;
  // 8-bit scale: code 255 covers roughly 200,000 cd/m².
  static constexpr double scale = 198.0;
  static constexpr double peak_luminance = 10000.0;
};

static_assert(PqConstants::c1 + PqConstants::c2 == 1.0 + PqConstants::c3);

/// Linear luminance (cd/m²) to the nonlinear PQ value E'. Values above
/// 10000 cd/m² map above 1.0. Throws kInvalidInput on negative or
/// non-finite input.
double pq_inverse_eotf(double luminance);

/// Nonlinear PQ value back to linear luminance (cd/m²). Throws
/// kInvalidInput for negative input and kOutOfDomain once the rational
/// denominator reaches zero (E' near 2.0, far above code 255).
double pq_eotf(double encoded);

/// 8-bit code for one channel: floor(scale * E'), clamped to [0, 255].
std::uint8_t quantize_value(double luminance);

/// Linear luminance represented by an 8-bit code: pq_eotf(code / scale).
double dequantize_value(std::uint8_t code);

/// PQ-domain 8-bit RGB raster.
using QuantizedHdrImage = Raster<std::array<std::uint8_t, 3>>;

QuantizedHdrImage quantize_hdr(const HdrImage& img, int threads = 1);
HdrImage dequantize_hdr(const QuantizedHdrImage& img);

}  // namespace hdrelight::pq

#endif  // HDRELIGHT_PQ_CODEC_HPP
