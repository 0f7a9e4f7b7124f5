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

#include "hdrelight/irradiance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "hdrelight/hdr_io.hpp"
#include "hdrelight/parallel.hpp"

namespace hdrelight::irradiance {
namespace {

using envmap::CubeFace;
using envmap::Cubemap;
using envmap::EquirectEnv;

constexpr std::array<const char*, 6> kFaceTags = {"px", "nx", "py", "ny", "pz", "nz"};

double luminance(const Rgb& c) { return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; }

// Structure-of-arrays view of the source texels that carry weight.
struct SourceTexels {
  std::vector<double> x, y, z, weight, r, g, b;

  void push(const Vec3& d, double w, const Rgb& c) {
    x.push_back(d.x);
    y.push_back(d.y);
    z.push_back(d.z);
    weight.push_back(w);
    r.push_back(c.r);
    g.push_back(c.g);
    b.push_back(c.b);
  }
  std::size_t size() const { return x.size(); }
};

SourceTexels gather_source(const EquirectEnv& env) {
  const HdrImage& img = env.image();
  const int w = img.width();
  const int h = img.height();
  const double cell = (2.0 * kPi / w) * (kPi / h);
  SourceTexels src;
  src.x.reserve(img.size());
  for (int j = 0; j < h; ++j) {
    const double v = (j + 0.5) / h;
    const double d_omega = cell * std::sin(v * kPi);
    for (int i = 0; i < w; ++i) {
      const Vec3 local = envmap::equirect_uv_to_dir((i + 0.5) / w, v);
      // sample_equirect(d) reads the image at rotate(d, -rotation), so image
      // direction `local` sits at rotate(local, +rotation) in the world.
      src.push(envmap::rotate_yaw(local, env.rotation_deg()), d_omega, img.at(i, j));
    }
  }
  return src;
}

}  // namespace

EquirectEnv downsample_environment(const EquirectEnv& env, int target_height) {
  if (target_height < 1) throw Error(ErrorCode::kInvalidInput, "target height must be >= 1");
  const HdrImage& src = env.image();
  if (src.height() <= target_height) return env;
  envmap::note_environment_pass();

  const int sh = src.height();
  const int sw = src.width();
  const int th = target_height;
  const int tw = 2 * th;
  HdrImage out(tw, th);
  std::vector<double> row_weight(static_cast<std::size_t>(sh));
  for (int j = 0; j < sh; ++j) row_weight[static_cast<std::size_t>(j)] = std::sin((j + 0.5) / sh * kPi);

  for (int ty = 0; ty < th; ++ty) {
    const int y0 = static_cast<int>(static_cast<long long>(ty) * sh / th);
    const int y1 = static_cast<int>(static_cast<long long>(ty + 1) * sh / th);
    for (int tx = 0; tx < tw; ++tx) {
      const int x0 = static_cast<int>(static_cast<long long>(tx) * sw / tw);
      const int x1 = static_cast<int>(static_cast<long long>(tx + 1) * sw / tw);
      double r = 0.0, g = 0.0, b = 0.0, wsum = 0.0;
      for (int y = y0; y < y1; ++y) {
        const double wy = row_weight[static_cast<std::size_t>(y)];
        for (int x = x0; x < x1; ++x) {
          const Rgb& c = src.at(x, y);
          r += wy * c.r;
          g += wy * c.g;
          b += wy * c.b;
          wsum += wy;
        }
      }
      out.at(tx, ty) = {static_cast<float>(r / wsum), static_cast<float>(g / wsum), static_cast<float>(b / wsum)};
    }
  }
  return EquirectEnv(std::move(out), env.rotation_deg());
}

IrradianceCubemap prefilter_diffuse(const EquirectEnv& env, const PrefilterOptions& options) {
  if (options.face_size < 4) throw Error(ErrorCode::kInvalidInput, "irradiance face size must be >= 4");
  const EquirectEnv source = downsample_environment(env, options.source_height);
  envmap::note_environment_pass();
  const SourceTexels src = gather_source(source);
  const std::size_t count = src.size();

  IrradianceCubemap out{Cubemap(options.face_size)};
  const int n = options.face_size;
  for (int f = 0; f < 6; ++f) {
    const auto face = static_cast<CubeFace>(f);
    HdrImage& dst = out.map.face(face);
    parallel_for(0, n, options.threads, [&](int y) {
      for (int x = 0; x < n; ++x) {
        const Vec3 nrm = out.map.texel_direction(face, x, y);
        double r = 0.0, g = 0.0, b = 0.0, wsum = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
          const double c = nrm.x * src.x[k] + nrm.y * src.y[k] + nrm.z * src.z[k];
          if (c <= 0.0) continue;
          const double w = c * src.weight[k];
          r += w * src.r[k];
          g += w * src.g[k];
          b += w * src.b[k];
          wsum += w;
        }
        dst.at(x, y) = {static_cast<float>(r / wsum), static_cast<float>(g / wsum), static_cast<float>(b / wsum)};
      }
    });
  }
  return out;
}

DiffuseLightMap diffuse_light_map(const IrradianceCubemap& irr, const NormalMap& normals,
                                  double world_from_camera_yaw, int threads) {
  const int w = normals.width();
  const int h = normals.height();
  DiffuseLightMap out{HdrImage(w, h), normals.valid};
  parallel_for(0, h, threads, [&](int y) {
    for (int x = 0; x < w; ++x) {
      if (!normals.is_valid(x, y)) continue;
      const Vec3f& n = normals.normals.at(x, y);
      const Vec3 world = envmap::rotate_yaw({n.x, n.y, n.z}, world_from_camera_yaw);
      out.irradiance.at(x, y) = envmap::sample_cubemap(irr.map, world);
    }
  });
  return out;
}

double mean_irradiance(const IrradianceCubemap& irr) {
  const int n = irr.map.face_size();
  double sum = 0.0;
  double wsum = 0.0;
  for (int f = 0; f < 6; ++f) {
    const HdrImage& face = irr.map.face(static_cast<CubeFace>(f));
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double w = irr.map.texel_solid_angle(x, y);
        sum += w * luminance(face.at(x, y));
        wsum += w;
      }
    }
  }
  return sum / wsum;
}

void export_irradiance(const IrradianceCubemap& irr, const std::filesystem::path& dir, double yaw_deg) {
  std::filesystem::create_directories(dir);
  std::ostringstream manifest;
  manifest << "# irradiance cubemap\n";
  manifest << "face_size = " << irr.map.face_size() << "\n";
  manifest << "yaw_deg = " << yaw_deg << "\n";
  manifest << "face_order = +X -X +Y -Y +Z -Z\n";
  for (int f = 0; f < 6; ++f) {
    const std::string name = std::string("irradiance_") + kFaceTags[static_cast<std::size_t>(f)] + ".hdr";
    io::write_file(dir / name, io::write_radiance_hdr(irr.map.face(static_cast<CubeFace>(f))));
    manifest << "face." << kFaceTags[static_cast<std::size_t>(f)] << " = " << name << "\n";
  }
  const std::string text = manifest.str();
  io::write_file(dir / "manifest.txt", io::ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

IrradianceCubemap import_irradiance(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.txt");
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + (dir / "manifest.txt").string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, "malformed manifest line: " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.contains("face_size")) throw Error(ErrorCode::kConfig, "manifest lacks face_size");
  const int n = std::stoi(kv["face_size"]);
  IrradianceCubemap out{Cubemap(n)};
  for (int f = 0; f < 6; ++f) {
    const std::string key = std::string("face.") + kFaceTags[static_cast<std::size_t>(f)];
    if (!kv.contains(key)) throw Error(ErrorCode::kConfig, "manifest lacks " + key);
    HdrImage face = io::read_radiance_hdr(io::read_file(dir / kv[key]));
    if (face.width() != n || face.height() != n) throw Error(ErrorCode::kShapeMismatch, "face size mismatch in " + key);
    out.map.face(static_cast<CubeFace>(f)) = std::move(face);
  }
  return out;
}

}  // namespace hdrelight::irradiance
