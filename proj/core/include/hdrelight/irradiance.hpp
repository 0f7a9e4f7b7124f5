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

#ifndef HDRELIGHT_IRRADIANCE_HPP
#define HDRELIGHT_IRRADIANCE_HPP

#include <filesystem>

#include "hdrelight/envmap.hpp"
#include "hdrelight/images.hpp"

namespace hdrelight::irradiance {

/// Cosine-convolved environment: each texel holds the irradiance E(n) seen
/// by a surface facing the texel direction, normalized so a constant
/// environment maps to itself.
struct IrradianceCubemap {
  envmap::Cubemap map;
};

struct PrefilterOptions {
  int face_size = 32;
  /// Source environments taller than this are box-filtered down first.
  int source_height = 64;
  int threads = 0;
};

/// Solid-angle-weighted box filter to the given height (width = 2 * height).
/// Environments already at or below the target are returned unchanged.
envmap::EquirectEnv downsample_environment(const envmap::EquirectEnv& env, int target_height);

/// Exact discrete convolution of the environment with the clamped-cosine
/// kernel, summed over every source texel with weights
/// (2pi / W) (pi / H) sin(theta). The environment's yaw offset is applied to
/// the source directions, so the result is in world orientation.
IrradianceCubemap prefilter_diffuse(const envmap::EquirectEnv& env, const PrefilterOptions& options = {});

/// Per-pixel irradiance aligned with a normal map; invalid pixels hold zero.
struct DiffuseLightMap {
  HdrImage irradiance;
  Raster<std::uint8_t> valid;
};

/// Samples the cubemap at each valid camera-space normal after rotating it
/// by world_from_camera_yaw degrees about +Y.
DiffuseLightMap diffuse_light_map(const IrradianceCubemap& irr, const NormalMap& normals,
                                  double world_from_camera_yaw = 0.0, int threads = 1);

/// Solid-angle-weighted mean of the Rec. 709 luminance over all texels.
double mean_irradiance(const IrradianceCubemap& irr);

/// Writes irradiance_{px,nx,py,ny,pz,nz}.hdr and manifest.txt into dir.
void export_irradiance(const IrradianceCubemap& irr, const std::filesystem::path& dir, double yaw_deg);
IrradianceCubemap import_irradiance(const std::filesystem::path& dir);

}  // namespace hdrelight::irradiance

#endif  // HDRELIGHT_IRRADIANCE_HPP
