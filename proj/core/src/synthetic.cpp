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

#include "hdrelight/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hdrelight::synthetic {

envmap::EquirectEnv constant_environment(int width, Rgb value, double rotation_deg) {
  return envmap::EquirectEnv(HdrImage(width, width / 2, value), rotation_deg);
}

envmap::EquirectEnv upper_hemisphere_environment(int width, Rgb value) {
  const int h = width / 2;
  HdrImage img(width, h);
  for (int y = 0; y < h; ++y) {
    const Rgb c = (y + 0.5) / h < 0.5 ? value : Rgb{};
    for (int x = 0; x < width; ++x) img.at(x, y) = c;
  }
  return envmap::EquirectEnv(std::move(img));
}

envmap::EquirectEnv sky_environment(int width, const Vec3& sun) {
  const int h = width / 2;
  const Vec3 s = normalize(sun);
  HdrImage img(width, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec3 d = envmap::equirect_uv_to_dir((x + 0.5) / width, (y + 0.5) / h);
      const double sky = 0.4 + 0.6 * std::max(d.y, 0.0);
      const double ground = 0.15;
      const double base = d.y >= 0.0 ? sky : ground;
      const double lobe = 8.0 * std::pow(std::max(dot(d, s), 0.0), 16.0);
      img.at(x, y) = {static_cast<float>(base * 0.8 + lobe), static_cast<float>(base * 0.9 + lobe * 0.8),
                      static_cast<float>(base * 1.0 + lobe * 0.5)};
    }
  }
  return envmap::EquirectEnv(std::move(img));
}

NormalMap sphere_normals(int width, int height, double radius_fraction) {
  NormalMap out(width, height);
  const double radius = radius_fraction * std::min(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double nx = (x + 0.5 - width * 0.5) / radius;
      const double ny = (height * 0.5 - (y + 0.5)) / radius;
      const double rr = nx * nx + ny * ny;
      if (rr >= 1.0) continue;
      out.set(x, y, {static_cast<float>(nx), static_cast<float>(ny), static_cast<float>(std::sqrt(1.0 - rr))});
    }
  }
  return out;
}

NormalMap jitter_normals(const NormalMap& normals, double sigma, std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + stream);
  // Box-Muller on raw engine output keeps the sequence library-independent.
  auto gauss = [&rng]() {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  NormalMap out = normals;
  for (int y = 0; y < normals.height(); ++y) {
    for (int x = 0; x < normals.width(); ++x) {
      if (!normals.is_valid(x, y)) continue;
      const Vec3f& n = normals.normals.at(x, y);
      const Vec3 v{n.x + sigma * gauss(), n.y + sigma * gauss(), n.z + sigma * gauss()};
      const double len = length(v);
      if (len < 1e-6) {
        out.invalidate(x, y);
        continue;
      }
      out.set(x, y, {static_cast<float>(v.x / len), static_cast<float>(v.y / len), static_cast<float>(v.z / len)});
    }
  }
  return out;
}

AlphaMask mask_from_normals(const NormalMap& normals) {
  AlphaMask m(normals.width(), normals.height());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = normals.valid[i] ? 1.0f : 0.0f;
  return m;
}

}  // namespace hdrelight::synthetic
