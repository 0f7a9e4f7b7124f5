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

#ifndef HDRELIGHT_ENVMAP_HPP
#define HDRELIGHT_ENVMAP_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hdrelight/common.hpp"

// Shared conventions: +Y up, +Z forward (toward the camera for camera-space
// normals), +X right. Equirectangular u runs with azimuth measured from +Z
// toward +X; v runs from the zenith (v = 0) to the nadir (v = 1).
namespace hdrelight::envmap {

/// Unit direction.
using Direction = Vec3;

struct Uv {
  double u = 0.0;
  double v = 0.0;
};

/// Rotates d about +Y; positive angles turn +Z toward +X.
Direction rotate_yaw(const Direction& d, double degrees);

Direction equirect_uv_to_dir(double u, double v);
/// Inverse of equirect_uv_to_dir; u is 0.5 at the poles.
Uv dir_to_equirect_uv(const Direction& d);

/// 2:1 equirectangular radiance panorama plus a yaw offset in [0, 360).
class EquirectEnv {
 public:
  explicit EquirectEnv(HdrImage image, double rotation_deg = 0.0);

  const HdrImage& image() const noexcept { return image_; }
  double rotation_deg() const noexcept { return rotation_deg_; }
  int width() const noexcept { return image_.width(); }
  int height() const noexcept { return image_.height(); }

  EquirectEnv with_rotation(double rotation_deg) const { return EquirectEnv(image_, rotation_deg); }

 private:
  HdrImage image_;
  double rotation_deg_;
};

/// Bilinear lookup with horizontal wrap and vertical clamp. The query is
/// rotated by -rotation_deg before the uv mapping.
Rgb sample_equirect(const EquirectEnv& env, const Direction& d);

enum class CubeFace : int { kPosX = 0, kNegX, kPosY, kNegY, kPosZ, kNegZ };

struct FaceCoord {
  CubeFace face = CubeFace::kPosX;
  double s = 0.0;  // [-1, 1], left to right
  double t = 0.0;  // [-1, 1], top to bottom
};

/// Direction through face coordinates (s, t); not normalized. Values outside
/// [-1, 1] extend the face plane.
Vec3 face_direction(CubeFace face, double s, double t);
/// Major-axis face selection.
FaceCoord direction_to_face(const Direction& d);

/// Six square faces in +X, -X, +Y, -Y, +Z, -Z order.
class Cubemap {
 public:
  Cubemap() = default;
  explicit Cubemap(int face_size, Rgb fill = {});

  int face_size() const noexcept { return face_size_; }
  HdrImage& face(CubeFace f) { return faces_[static_cast<std::size_t>(f)]; }
  const HdrImage& face(CubeFace f) const { return faces_[static_cast<std::size_t>(f)]; }

  /// Unit direction through the centre of texel (x, y) of a face.
  Direction texel_direction(CubeFace f, int x, int y) const;
  /// Solid angle subtended by texel (x, y); identical on every face.
  double texel_solid_angle(int x, int y) const;

 private:
  int face_size_ = 0;
  std::array<HdrImage, 6> faces_;
};

/// Bilinear within the selected face. Taps that fall off the face edge are
/// fetched from the adjacent face, so filtering is continuous across seams.
Rgb sample_cubemap(const Cubemap& c, const Direction& d);

Cubemap equirect_to_cubemap(const EquirectEnv& env, int face_size, int threads = 1);

struct ViewSpec {
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double fov_h_deg = 60.0;
  int width = 64;
  int height = 64;
};

/// Throws kInvalidInput unless 0 < fov < 180, |pitch| <= 90 and the size is positive.
void validate_view(const ViewSpec& view);

/// World-space ray through the centre of pixel (x, y): pinhole camera
/// looking down +Z, then roll, pitch (positive looks up) and yaw applied in
/// that order.
Direction view_ray(const ViewSpec& view, int x, int y);

HdrImage extract_perspective(const EquirectEnv& env, const ViewSpec& view, int threads = 1);

struct PerspectiveSample {
  ViewSpec view;
  HdrImage image;
};

/// Perspective crops with yaws stratified over [0, 360), pitch uniform in
/// [-30, 30] and horizontal fov uniform in [60, 90]. Deterministic for a seed.
std::vector<PerspectiveSample> augment_panorama(const EquirectEnv& env, int count, std::uint64_t seed,
                                                int width = 256, int height = 256);

/// Count of passes that touch every texel of a source environment
/// (cubemap conversion, downsampling, prefiltering). Process-wide.
std::uint64_t environment_pass_count();
void note_environment_pass();

}  // namespace hdrelight::envmap

#endif  // HDRELIGHT_ENVMAP_HPP
