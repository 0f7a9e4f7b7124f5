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

#include "hdrelight/pq_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdrelight/parallel.hpp"

namespace hdrelight::pq {
namespace {

using K = PqConstants;

// Tolerance (in code units) absorbing double round-off when a dequantized
// value is quantized again; without it floor() can land one code low.
constexpr double kTruncationGuard = 1e-9;

// Smallest float >= value, so float storage never moves a dequantized value
// below its code's lower bin edge.
float round_up_to_float(double value) {
  float f = static_cast<float>(value);
  if (static_cast<double>(f) < value) f = std::nextafter(f, std::numeric_limits<float>::infinity());
  return f;
}

struct DequantizeTable {
  std::array<float, 256> values{};
  DequantizeTable() {
    for (int d = 0; d < 256; ++d) {
      values[static_cast<std::size_t>(d)] = round_up_to_float(dequantize_value(static_cast<std::uint8_t>(d)));
    }
  }
};

const DequantizeTable& table() {
  static const DequantizeTable t;
  return t;
}

}  // namespace

double pq_inverse_eotf(double luminance) {
  if (!std::isfinite(luminance) || luminance < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "PQ encode requires finite luminance >= 0");
  }
  const double y = luminance / K::peak_luminance;
  const double t = std::pow(y, K::m1);
  return std::pow((K::c1 + K::c2 * t) / (1.0 + K::c3 * t), K::m2);
}

double pq_eotf(double encoded) {
  if (!std::isfinite(encoded) || encoded < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "PQ decode requires finite value >= 0");
  }
  const double p = std::pow(encoded, 1.0 / K::m2);
  const double den = K::c2 - K::c3 * p;
  if (den <= 0.0) {
    throw Error(ErrorCode::kOutOfDomain, "PQ decode denominator is non-positive");
  }
  const double num = std::max(p - K::c1, 0.0);
  return K::peak_luminance * std::pow(num / den, 1.0 / K::m1);
}

std::uint8_t quantize_value(double luminance) {
  const double code = std::floor(K::scale * pq_inverse_eotf(luminance) + kTruncationGuard);
  return static_cast<std::uint8_t>(std::clamp(code, 0.0, 255.0));
}

double dequantize_value(std::uint8_t code) { return pq_eotf(static_cast<double>(code) / K::scale); }

QuantizedHdrImage quantize_hdr(const HdrImage& img, int threads) {
  validate_hdr(img);
  QuantizedHdrImage out(img.width(), img.height());
  parallel_for(0, img.height(), threads, [&](int y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb& p = img.at(x, y);
      out.at(x, y) = {quantize_value(p.r), quantize_value(p.g), quantize_value(p.b)};
    }
  });
  return out;
}

HdrImage dequantize_hdr(const QuantizedHdrImage& img) {
  if (img.empty()) throw Error(ErrorCode::kInvalidInput, "empty quantized image");
  const auto& lut = table().values;
  HdrImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const auto& c = img[i];
    out[i] = {lut[c[0]], lut[c[1]], lut[c[2]]};
  }
  return out;
}

}  // namespace hdrelight::pq
