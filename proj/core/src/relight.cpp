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

#include "hdrelight/relight.hpp"

#include <algorithm>
#include <cmath>

#include "hdrelight/parallel.hpp"

namespace hdrelight::relight {
namespace {

struct DecodeTable {
  std::array<float, 256> values{};
  DecodeTable() {
    for (int c = 0; c < 256; ++c) values[static_cast<std::size_t>(c)] = static_cast<float>(linearize_code(static_cast<std::uint8_t>(c)));
  }
};

const DecodeTable& decode_table() {
  static const DecodeTable t;
  return t;
}

Vec3 to_vec(const Rgb& c) { return {c.r, c.g, c.b}; }

float clamp01(double v) { return static_cast<float>(std::clamp(v, 0.0, 1.0)); }

LdrImage tone_mapped(const HdrImage& radiance, double exposure) {
  LdrImage out(radiance.width(), radiance.height(), 3);
  for (std::size_t i = 0; i < radiance.size(); ++i) {
    const Rgb& p = radiance[i];
    out.codes[i * 3 + 0] = encode_code(tone_map(exposure * p.r));
    out.codes[i * 3 + 1] = encode_code(tone_map(exposure * p.g));
    out.codes[i * 3 + 2] = encode_code(tone_map(exposure * p.b));
  }
  return out;
}

}  // namespace

void validate(const ShadingParams& p) {
  if (!(p.s1 >= 0.0) || !(p.s2 >= 0.0)) throw Error(ErrorCode::kInvalidInput, "shading constants must be >= 0");
  const double sum = p.gray_weights[0] + p.gray_weights[1] + p.gray_weights[2];
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidInput, "gray weights must sum to 1");
}

double linearize_code(std::uint8_t code) {
  const double c = code / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

std::uint8_t encode_code(double linear) {
  const double x = std::clamp(linear, 0.0, 1.0);
  const double e = x <= 0.0031308 ? 12.92 * x : 1.055 * std::pow(x, 1.0 / 2.4) - 0.055;
  return static_cast<std::uint8_t>(std::nearbyint(std::clamp(e, 0.0, 1.0) * 255.0));
}

LinearImage linearize(const LdrImage& capture) {
  if (capture.channels < 3) throw Error(ErrorCode::kInvalidInput, "capture must be RGB or RGBA");
  const auto& lut = decode_table().values;
  LinearImage out(capture.width, capture.height);
  const auto stride = static_cast<std::size_t>(capture.channels);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t* p = capture.codes.data() + i * stride;
    out[i] = {lut[p[0]], lut[p[1]], lut[p[2]]};
  }
  return out;
}

LdrImage encode_display(const HdrImage& linear) {
  LdrImage out(linear.width(), linear.height(), 3);
  for (std::size_t i = 0; i < linear.size(); ++i) {
    out.codes[i * 3 + 0] = encode_code(linear[i].r);
    out.codes[i * 3 + 1] = encode_code(linear[i].g);
    out.codes[i * 3 + 2] = encode_code(linear[i].b);
  }
  return out;
}

Vec3 low_saturation(const Vec3& rgb, const ShadingParams& p) {
  const double gray = p.gray_weights[0] * rgb.x + p.gray_weights[1] * rgb.y + p.gray_weights[2] * rgb.z;
  const double g = p.gray_mix * gray + p.offset;
  return {p.color_mix * rgb.x + g, p.color_mix * rgb.y + g, p.color_mix * rgb.z + g};
}

LinearImage low_saturation(const LinearImage& img, const ShadingParams& params) {
  LinearImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Vec3 v = low_saturation(to_vec(img[i]), params);
    out[i] = {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
  }
  return out;
}

Vec3 shade_pixel(const Vec3& rgb, const Vec3& low_sat, const Vec3& light, const ShadingParams& p) {
  return {p.s1 * rgb.x + p.s2 * low_sat.x * light.x, p.s1 * rgb.y + p.s2 * low_sat.y * light.y,
          p.s1 * rgb.z + p.s2 * low_sat.z * light.z};
}

RelitFrame shade(const LinearImage& capture, const LinearImage& low_sat, const irradiance::DiffuseLightMap& light,
                 const ShadingParams& params, double light_gain, int threads) {
  if (!capture.same_shape(low_sat) || !capture.same_shape(light.irradiance) || !capture.same_shape(light.valid)) {
    throw Error(ErrorCode::kShapeMismatch, "capture, low-saturation image and light map must align");
  }
  RelitFrame out(capture.width(), capture.height());
  parallel_for(0, capture.height(), threads, [&](int y) {
    for (int x = 0; x < capture.width(); ++x) {
      const Vec3 d = light.valid.at(x, y) ? to_vec(light.irradiance.at(x, y)) * light_gain : Vec3{};
      const Vec3 r = shade_pixel(to_vec(capture.at(x, y)), to_vec(low_sat.at(x, y)), d, params);
      out.at(x, y) = {clamp01(r.x), clamp01(r.y), clamp01(r.z)};
    }
  });
  return out;
}

double tone_map(double x) { return x / (1.0 + x); }

LdrImage render_background(const envmap::EquirectEnv& env, const envmap::ViewSpec& view, double exposure,
                           int threads) {
  return tone_mapped(envmap::extract_perspective(env, view, threads), exposure);
}

LdrImage render_camera_background(const envmap::EquirectEnv& env, double world_from_camera_yaw, double fov_h_deg,
                                  int width, int height, double exposure, int threads) {
  envmap::ViewSpec view;
  view.fov_h_deg = fov_h_deg;
  view.width = width;
  view.height = height;
  envmap::validate_view(view);
  HdrImage radiance(width, height);
  parallel_for(0, height, threads, [&](int y) {
    for (int x = 0; x < width; ++x) {
      // Camera-space ray with z flipped: the capture camera looks down -Z.
      Vec3 r = envmap::view_ray(view, x, y);
      r.z = -r.z;
      radiance.at(x, y) = envmap::sample_equirect(env, envmap::rotate_yaw(r, world_from_camera_yaw));
    }
  });
  return tone_mapped(radiance, exposure);
}

LdrImage composite(const RelitFrame& relit, const AlphaMask& alpha, const LdrImage& background) {
  if (!relit.same_shape(alpha) || background.width != relit.width() || background.height != relit.height() ||
      background.channels < 3) {
    throw Error(ErrorCode::kShapeMismatch, "relit frame, mask and background must align");
  }
  LdrImage out(relit.width(), relit.height(), 3);
  const auto stride = static_cast<std::size_t>(background.channels);
  for (std::size_t i = 0; i < relit.size(); ++i) {
    const double a = std::clamp(static_cast<double>(alpha[i]), 0.0, 1.0);
    const std::uint8_t fg[3] = {encode_code(relit[i].r), encode_code(relit[i].g), encode_code(relit[i].b)};
    for (int c = 0; c < 3; ++c) {
      const double bg = background.codes[i * stride + static_cast<std::size_t>(c)];
      out.codes[i * 3 + static_cast<std::size_t>(c)] =
          static_cast<std::uint8_t>(std::nearbyint(a * fg[c] + (1.0 - a) * bg));
    }
  }
  return out;
}

}  // namespace hdrelight::relight
