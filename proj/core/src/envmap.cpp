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

#include "hdrelight/envmap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

#include "hdrelight/parallel.hpp"

namespace hdrelight::envmap {
namespace {

std::atomic<std::uint64_t> g_environment_passes{0};

// a + (b - a) * t keeps a == b exact, so constant maps sample to exactly
// their value.
inline float lerp(float a, float b, float t) { return a + (b - a) * t; }

inline Rgb lerp(const Rgb& a, const Rgb& b, float t) {
  return {lerp(a.r, b.r, t), lerp(a.g, b.g, t), lerp(a.b, b.b, t)};
}

inline Rgb bilerp(const Rgb& c00, const Rgb& c10, const Rgb& c01, const Rgb& c11, float fx, float fy) {
  return lerp(lerp(c00, c10, fx), lerp(c01, c11, fx), fy);
}

double wrap_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

// Unrotated bilinear lookup in image space.
Rgb sample_image(const HdrImage& img, const Direction& d) {
  const Uv uv = dir_to_equirect_uv(d);
  const int w = img.width();
  const int h = img.height();
  const double px = uv.u * w - 0.5;
  const double py = std::clamp(uv.v * h - 0.5, 0.0, static_cast<double>(h - 1));
  const double fx0 = std::floor(px);
  const double fy0 = std::floor(py);
  const float fx = static_cast<float>(px - fx0);
  const float fy = static_cast<float>(py - fy0);
  int x0 = static_cast<int>(fx0) % w;
  if (x0 < 0) x0 += w;
  const int x1 = x0 + 1 == w ? 0 : x0 + 1;
  const int y0 = static_cast<int>(fy0);
  const int y1 = std::min(y0 + 1, h - 1);
  return bilerp(img.at(x0, y0), img.at(x1, y0), img.at(x0, y1), img.at(x1, y1), fx, fy);
}

// Nearest texel of the face hit by an arbitrary direction.
const Rgb& fetch_across_seam(const Cubemap& c, CubeFace face, int ix, int iy) {
  const int n = c.face_size();
  const double s = 2.0 * (ix + 0.5) / n - 1.0;
  const double t = 2.0 * (iy + 0.5) / n - 1.0;
  const FaceCoord fc = direction_to_face(face_direction(face, s, t));
  const int x = std::clamp(static_cast<int>(std::floor((fc.s + 1.0) * 0.5 * n)), 0, n - 1);
  const int y = std::clamp(static_cast<int>(std::floor((fc.t + 1.0) * 0.5 * n)), 0, n - 1);
  return c.face(fc.face).at(x, y);
}

double texel_area_term(double x, double y) { return std::atan2(x * y, std::sqrt(x * x + y * y + 1.0)); }

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Direction rotate_yaw(const Direction& d, double degrees) {
  if (degrees == 0.0) return d;
  const double a = deg_to_rad(degrees);
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {d.x * c + d.z * s, d.y, -d.x * s + d.z * c};
}

Direction equirect_uv_to_dir(double u, double v) {
  const double theta = v * kPi;
  const double phi = (u - 0.5) * 2.0 * kPi;
  const double st = std::sin(theta);
  return {st * std::sin(phi), std::cos(theta), st * std::cos(phi)};
}

Uv dir_to_equirect_uv(const Direction& d) {
  const double theta = std::acos(std::clamp(d.y, -1.0, 1.0));
  const double horizontal = std::hypot(d.x, d.z);
  double u = 0.5;
  if (horizontal > 1e-12) {
    u = std::atan2(d.x, d.z) / (2.0 * kPi) + 0.5;
    if (u >= 1.0) u -= 1.0;
    if (u < 0.0) u += 1.0;
  }
  return {u, theta / kPi};
}

EquirectEnv::EquirectEnv(HdrImage image, double rotation_deg)
    : image_(std::move(image)), rotation_deg_(wrap_degrees(rotation_deg)) {
  if (image_.empty() || image_.width() != 2 * image_.height()) {
    throw Error(ErrorCode::kInvalidInput, "equirectangular environments must be 2:1 (width = 2 * height)");
  }
  validate_hdr(image_);
}

Rgb sample_equirect(const EquirectEnv& env, const Direction& d) {
  return sample_image(env.image(), rotate_yaw(d, -env.rotation_deg()));
}

Vec3 face_direction(CubeFace face, double s, double t) {
  switch (face) {
    case CubeFace::kPosX:
      return {1.0, -t, -s};
    case CubeFace::kNegX:
      return {-1.0, -t, s};
    case CubeFace::kPosY:
      return {s, 1.0, t};
    case CubeFace::kNegY:
      return {s, -1.0, -t};
    case CubeFace::kPosZ:
      return {s, -t, 1.0};
    case CubeFace::kNegZ:
      return {-s, -t, -1.0};
  }
  return {};
}

FaceCoord direction_to_face(const Direction& d) {
  const double ax = std::abs(d.x);
  const double ay = std::abs(d.y);
  const double az = std::abs(d.z);
  if (ax >= ay && ax >= az) {
    return d.x > 0.0 ? FaceCoord{CubeFace::kPosX, -d.z / ax, -d.y / ax}
                     : FaceCoord{CubeFace::kNegX, d.z / ax, -d.y / ax};
  }
  if (ay >= az) {
    return d.y > 0.0 ? FaceCoord{CubeFace::kPosY, d.x / ay, d.z / ay}
                     : FaceCoord{CubeFace::kNegY, d.x / ay, -d.z / ay};
  }
  return d.z > 0.0 ? FaceCoord{CubeFace::kPosZ, d.x / az, -d.y / az}
                   : FaceCoord{CubeFace::kNegZ, -d.x / az, -d.y / az};
}

Cubemap::Cubemap(int face_size, Rgb fill) : face_size_(face_size) {
  if (face_size < 1) throw Error(ErrorCode::kInvalidInput, "cubemap face size must be >= 1");
  for (auto& f : faces_) f = HdrImage(face_size, face_size, fill);
}

Direction Cubemap::texel_direction(CubeFace f, int x, int y) const {
  const double s = 2.0 * (x + 0.5) / face_size_ - 1.0;
  const double t = 2.0 * (y + 0.5) / face_size_ - 1.0;
  return normalize(face_direction(f, s, t));
}

double Cubemap::texel_solid_angle(int x, int y) const {
  const double step = 2.0 / face_size_;
  const double s0 = -1.0 + x * step;
  const double t0 = -1.0 + y * step;
  const double s1 = s0 + step;
  const double t1 = t0 + step;
  return texel_area_term(s0, t0) - texel_area_term(s0, t1) - texel_area_term(s1, t0) + texel_area_term(s1, t1);
}

Rgb sample_cubemap(const Cubemap& c, const Direction& d) {
  const int n = c.face_size();
  const FaceCoord fc = direction_to_face(d);
  const HdrImage& face = c.face(fc.face);
  const double px = (fc.s + 1.0) * 0.5 * n - 0.5;
  const double py = (fc.t + 1.0) * 0.5 * n - 0.5;
  const double fx0 = std::floor(px);
  const double fy0 = std::floor(py);
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const float fx = static_cast<float>(px - fx0);
  const float fy = static_cast<float>(py - fy0);

  if (x0 >= 0 && y0 >= 0 && x0 + 1 < n && y0 + 1 < n) {
    return bilerp(face.at(x0, y0), face.at(x0 + 1, y0), face.at(x0, y0 + 1), face.at(x0 + 1, y0 + 1), fx, fy);
  }
  auto tap = [&](int ix, int iy) -> const Rgb& {
    if (ix >= 0 && iy >= 0 && ix < n && iy < n) return face.at(ix, iy);
    return fetch_across_seam(c, fc.face, ix, iy);
  };
  return bilerp(tap(x0, y0), tap(x0 + 1, y0), tap(x0, y0 + 1), tap(x0 + 1, y0 + 1), fx, fy);
}

Cubemap equirect_to_cubemap(const EquirectEnv& env, int face_size, int threads) {
  Cubemap out(face_size);
  note_environment_pass();
  for (int f = 0; f < 6; ++f) {
    const auto face = static_cast<CubeFace>(f);
    HdrImage& dst = out.face(face);
    parallel_for(0, face_size, threads, [&](int y) {
      for (int x = 0; x < face_size; ++x) dst.at(x, y) = sample_equirect(env, out.texel_direction(face, x, y));
    });
  }
  return out;
}

void validate_view(const ViewSpec& view) {
  if (!(view.fov_h_deg > 0.0 && view.fov_h_deg < 180.0)) {
    throw Error(ErrorCode::kInvalidInput, "horizontal field of view must be in (0, 180) degrees");
  }
  if (!(view.pitch_deg >= -90.0 && view.pitch_deg <= 90.0)) {
    throw Error(ErrorCode::kInvalidInput, "pitch must be in [-90, 90] degrees");
  }
  if (view.width < 1 || view.height < 1) throw Error(ErrorCode::kInvalidInput, "view size must be positive");
}

Direction view_ray(const ViewSpec& view, int x, int y) {
  const double half = std::tan(deg_to_rad(view.fov_h_deg) * 0.5);
  const double aspect = static_cast<double>(view.height) / view.width;
  Vec3 r{(2.0 * (x + 0.5) / view.width - 1.0) * half, (1.0 - 2.0 * (y + 0.5) / view.height) * half * aspect, 1.0};

  if (view.roll_deg != 0.0) {
    const double a = deg_to_rad(view.roll_deg);
    r = {r.x * std::cos(a) - r.y * std::sin(a), r.x * std::sin(a) + r.y * std::cos(a), r.z};
  }
  if (view.pitch_deg != 0.0) {
    const double a = deg_to_rad(view.pitch_deg);
    r = {r.x, r.y * std::cos(a) + r.z * std::sin(a), -r.y * std::sin(a) + r.z * std::cos(a)};
  }
  return rotate_yaw(normalize(r), view.yaw_deg);
}

HdrImage extract_perspective(const EquirectEnv& env, const ViewSpec& view, int threads) {
  validate_view(view);
  HdrImage out(view.width, view.height);
  parallel_for(0, view.height, threads, [&](int y) {
    for (int x = 0; x < view.width; ++x) out.at(x, y) = sample_equirect(env, view_ray(view, x, y));
  });
  return out;
}

std::vector<PerspectiveSample> augment_panorama(const EquirectEnv& env, int count, std::uint64_t seed, int width,
                                                int height) {
  if (count < 1) throw Error(ErrorCode::kInvalidInput, "augmentation count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<PerspectiveSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    ViewSpec view;
    view.yaw_deg = wrap_degrees((i + uniform01(rng)) * 360.0 / count);
    view.pitch_deg = -30.0 + 60.0 * uniform01(rng);
    view.fov_h_deg = 60.0 + 30.0 * uniform01(rng);
    view.width = width;
    view.height = height;
    out.push_back({view, extract_perspective(env, view)});
  }
  return out;
}

std::uint64_t environment_pass_count() { return g_environment_passes.load(std::memory_order_relaxed); }

void note_environment_pass() { g_environment_passes.fetch_add(1, std::memory_order_relaxed); }

}  // namespace hdrelight::envmap
