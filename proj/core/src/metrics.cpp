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

#include "hdrelight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hdrelight::metrics {
namespace {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

FlickerReport flicker_score(std::span<const HdrImage> frames, std::span<const AlphaMask> masks) {
  if (frames.size() < 2) throw Error(ErrorCode::kInvalidInput, "flicker needs at least two frames");
  if (masks.size() != 1 && masks.size() != frames.size()) {
    throw Error(ErrorCode::kShapeMismatch, "pass one mask or one mask per frame");
  }
  for (const auto& f : frames) {
    if (!f.same_shape(frames[0])) throw Error(ErrorCode::kShapeMismatch, "frames differ in size");
  }
  for (const auto& m : masks) {
    if (!m.same_shape(frames[0])) throw Error(ErrorCode::kShapeMismatch, "mask size differs from frames");
  }

  FlickerReport report;
  for (std::size_t t = 1; t < frames.size(); ++t) {
    const AlphaMask& m0 = masks.size() == 1 ? masks[0] : masks[t - 1];
    const AlphaMask& m1 = masks.size() == 1 ? masks[0] : masks[t];
    const HdrImage& a = frames[t - 1];
    const HdrImage& b = frames[t];
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (m0[i] < 0.5f || m1[i] < 0.5f) continue;
      sum += std::abs(static_cast<double>(b[i].r) - a[i].r) + std::abs(static_cast<double>(b[i].g) - a[i].g) +
             std::abs(static_cast<double>(b[i].b) - a[i].b);
      n += 3;
    }
    report.per_step.push_back(n == 0 ? 0.0 : sum / static_cast<double>(n));
  }
  double total = 0.0;
  for (double s : report.per_step) {
    total += s;
    report.max = std::max(report.max, s);
  }
  report.mean = total / static_cast<double>(report.per_step.size());
  return report;
}

ImageStats image_stats(const HdrImage& a, const HdrImage& b) {
  if (!a.same_shape(b) || a.empty()) throw Error(ErrorCode::kShapeMismatch, "images must have the same size");
  double max_abs = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [x, y] : {std::pair{a[i].r, b[i].r}, std::pair{a[i].g, b[i].g}, std::pair{a[i].b, b[i].b}}) {
      const double d = static_cast<double>(x) - static_cast<double>(y);
      max_abs = std::max(max_abs, std::abs(d));
      sq += d * d;
    }
  }
  const double mse = sq / static_cast<double>(a.size() * 3);
  ImageStats s;
  s.max_abs_diff = max_abs;
  s.rms = std::sqrt(mse);
  s.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
  return s;
}

HdrImage ldr_to_unit(const LdrImage& img) {
  if (img.channels < 3) throw Error(ErrorCode::kInvalidInput, "expected an RGB or RGBA raster");
  HdrImage out(img.width, img.height);
  const auto stride = static_cast<std::size_t>(img.channels);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t* p = img.codes.data() + i * stride;
    out[i] = {p[0] / 255.0f, p[1] / 255.0f, p[2] / 255.0f};
  }
  return out;
}

std::string to_key_value(const FlickerReport& r) {
  std::ostringstream os;
  os << "steps=" << r.per_step.size() << "\n";
  os << "flicker_mean=" << format_double(r.mean) << "\n";
  os << "flicker_max=" << format_double(r.max) << "\n";
  return os.str();
}

std::string to_csv(const FlickerReport& r) {
  std::ostringstream os;
  os << "step,flicker\n";
  for (std::size_t i = 0; i < r.per_step.size(); ++i) os << (i + 1) << "," << format_double(r.per_step[i]) << "\n";
  return os.str();
}

std::string to_key_value(const ImageStats& s) {
  std::ostringstream os;
  os << "max_abs_diff=" << format_double(s.max_abs_diff) << "\n";
  os << "rms=" << format_double(s.rms) << "\n";
  os << "psnr=" << format_double(s.psnr) << "\n";
  return os.str();
}

}  // namespace hdrelight::metrics
