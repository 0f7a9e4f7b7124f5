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

#ifndef HDRELIGHT_REFERENCES_HPP
#define HDRELIGHT_REFERENCES_HPP

#include <optional>
#include <utility>

#include "hdrelight/envmap.hpp"
#include "hdrelight/irradiance.hpp"

// Light-probe spheres rendered orthographically, viewed from +Z.
namespace hdrelight::references {

struct SphereSpec {
  int size = 256;                /// square image side in pixels
  double radius_fraction = 0.5;  /// sphere radius relative to the image side, (0, 0.5]
};

void validate(const SphereSpec& spec);

struct SphereImage {
  HdrImage radiance;
  AlphaMask alpha;  /// 1 inside the disk, 0 outside
};

/// Disk coordinates of pixel (px, py) in [-1, 1]², +y up; nullopt outside.
std::optional<Vec3> sphere_normal(const SphereSpec& spec, int px, int py);

/// Pixel centre whose disk coordinates are closest to (x, y).
std::pair<double, double> disk_to_pixel(const SphereSpec& spec, double x, double y);

/// Irradiance seen by each sphere normal, rotated by yaw into the world.
SphereImage render_diffuse_sphere(const irradiance::IrradianceCubemap& irr, const SphereSpec& spec,
                                  double yaw_deg = 0.0);

/// Environment reflected about each sphere normal for a viewer at +Z. The
/// reflected ray is rotated by yaw like the diffuse sphere's normals.
SphereImage render_mirror_sphere(const envmap::EquirectEnv& env, const SphereSpec& spec, double yaw_deg = 0.0);

}  // namespace hdrelight::references

#endif  // HDRELIGHT_REFERENCES_HPP
