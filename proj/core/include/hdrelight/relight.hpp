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

#ifndef HDRELIGHT_RELIGHT_HPP
#define HDRELIGHT_RELIGHT_HPP

#include <array>
#include <cstdint>

#include "hdrelight/envmap.hpp"
#include "hdrelight/images.hpp"
#include "hdrelight/irradiance.hpp"

namespace hdrelight::relight {

/// Light-adding shading: R = s1 * I + s2 * I_lowS * D, with
/// I_lowS = color_mix * I + gray_mix * gray(I) + offset.
struct ShadingParams {
  double s1 = 0.29;
  double s2 = 0.38;
  std::array<double, 3> gray_weights = {0.2126, 0.7152, 0.0722};
  double color_mix = 0.6;
  double gray_mix = 0.4;
  double offset = 0.05;
};

/// Throws kInvalidInput for negative constants or gray weights not summing to 1.
void validate(const ShadingParams& params);

/// Display-referred capture decoded to linear light, values in [0, 1].
using LinearImage = HdrImage;
/// Shaded foreground, clamped to [0, 1].
using RelitFrame = HdrImage;

/// Piecewise sRGB decode of code / 255.
double linearize_code(std::uint8_t code);
/// Piecewise sRGB encode of a linear value in [0, 1], rounded to the nearest code.
std::uint8_t encode_code(double linear);

/// Uses the first three channels; alpha, if any, is ignored.
LinearImage linearize(const LdrImage& capture);
/// 3-channel display encode of a linear [0, 1] raster.
LdrImage encode_display(const HdrImage& linear);

Vec3 low_saturation(const Vec3& rgb, const ShadingParams& params = {});
LinearImage low_saturation(const LinearImage& img, const ShadingParams& params = {});

/// Pre-clamp shading for one pixel.
Vec3 shade_pixel(const Vec3& rgb, const Vec3& low_sat, const Vec3& light, const ShadingParams& params = {});

/// Applies shade_pixel with D scaled by light_gain, then clamps to [0, 1].
/// Pixels the light map marks invalid get D = 0.
RelitFrame shade(const LinearImage& capture, const LinearImage& low_sat, const irradiance::DiffuseLightMap& light,
                 const ShadingParams& params = {}, double light_gain = 1.0, int threads = 1);

/// x / (1 + x).
double tone_map(double x);

/// Perspective view of the environment, scaled by exposure, tone mapped and
/// display encoded.
LdrImage render_background(const envmap::EquirectEnv& env, const envmap::ViewSpec& view, double exposure,
                           int threads = 1);

/// Background seen by the capture camera: it looks down camera -Z with +X to
/// the right, and camera space is turned into the world by
/// world_from_camera_yaw. Matches the frame diffuse_light_map lights normals in.
LdrImage render_camera_background(const envmap::EquirectEnv& env, double world_from_camera_yaw, double fov_h_deg,
                                  int width, int height, double exposure, int threads = 1);

/// out = alpha * encode(R) + (1 - alpha) * B, rounded to the nearest code.
LdrImage composite(const RelitFrame& relit, const AlphaMask& alpha, const LdrImage& background);

}  // namespace hdrelight::relight

#endif  // HDRELIGHT_RELIGHT_HPP
