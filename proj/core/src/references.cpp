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

#include "hdrelight/references.hpp"

#include <cmath>

namespace hdrelight::references {

void validate(const SphereSpec& spec) {
  if (spec.size < 1) throw Error(ErrorCode::kInvalidInput, "sphere image size must be positive");
  if (!(spec.radius_fraction > 0.0 && spec.radius_fraction <= 0.5)) {
    throw Error(ErrorCode::kInvalidInput, "sphere radius fraction must be in (0, 0.5]");
  }
}

std::optional<Vec3> sphere_normal(const SphereSpec& spec, int px, int py) {
  const double radius = spec.radius_fraction * spec.size;
  const double half = spec.size * 0.5;
  const double x = (px + 0.5 - half) / radius;
  const double y = (half - (py + 0.5)) / radius;
  const double rr = x * x + y * y;
  if (rr > 1.0) return std::nullopt;
  return Vec3{x, y, std::sqrt(1.0 - rr)};
}

std::pair<double, double> disk_to_pixel(const SphereSpec& spec, double x, double y) {
  const double radius = spec.radius_fraction * spec.size;
  const double half = spec.size * 0.5;
  return {x * radius + half - 0.5, half - y * radius - 0.5};
}

SphereImage render_diffuse_sphere(const irradiance::IrradianceCubemap& irr, const SphereSpec& spec,
                                  double yaw_deg) {
  validate(spec);
  SphereImage out{HdrImage(spec.size, spec.size), AlphaMask(spec.size, spec.size)};
  for (int py = 0; py < spec.size; ++py) {
    for (int px = 0; px < spec.size; ++px) {
      const auto n = sphere_normal(spec, px, py);
      if (!n) continue;
      out.radiance.at(px, py) = envmap::sample_cubemap(irr.map, envmap::rotate_yaw(*n, yaw_deg));
      out.alpha.at(px, py) = 1.0f;
    }
  }
  return out;
}

SphereImage render_mirror_sphere(const envmap::EquirectEnv& env, const SphereSpec& spec, double yaw_deg) {
  validate(spec);
  const Vec3 view{0.0, 0.0, 1.0};
  SphereImage out{HdrImage(spec.size, spec.size), AlphaMask(spec.size, spec.size)};
  for (int py = 0; py < spec.size; ++py) {
    for (int px = 0; px < spec.size; ++px) {
      const auto n = sphere_normal(spec, px, py);
      if (!n) continue;
      const Vec3 r = *n * (2.0 * dot(*n, view)) - view;
      out.radiance.at(px, py) = envmap::sample_equirect(env, envmap::rotate_yaw(normalize(r), yaw_deg));
      out.alpha.at(px, py) = 1.0f;
    }
  }
  return out;
}

}  // namespace hdrelight::references
