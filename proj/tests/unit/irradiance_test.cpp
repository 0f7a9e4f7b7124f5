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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "hdrelight/hdr_io.hpp"
#include "hdrelight/synthetic.hpp"
#include "oracles.hpp"

namespace hdrelight::irradiance {
namespace {

using envmap::CubeFace;
using envmap::Direction;
using envmap::EquirectEnv;

Direction random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalize(Vec3{g(rng), g(rng), g(rng)});
}

EquirectEnv linear_env(int width, const Vec3& a) {
  HdrImage img(width, width / 2);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < width; ++x) {
      const auto d = oracle::uv_dir((x + 0.5) / width, (y + 0.5) / img.height());
      const float v = static_cast<float>(1.0 + a.x * d.x + a.y * d.y + a.z * d.z);
      img.at(x, y) = {v, v, v};
    }
  }
  return EquirectEnv(std::move(img));
}

TEST(Prefilter, ConstantEnvironmentIsFixed) {
  const Rgb v{3.0f, 0.5f, 12.0f};
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::constant_environment(128, v), {8, 64, 1});
  for (int f = 0; f < 6; ++f) {
    for (const Rgb& p : irr.map.face(static_cast<CubeFace>(f)).data()) {
      EXPECT_NEAR(p.r, v.r, 1e-5f * v.r);
      EXPECT_NEAR(p.g, v.g, 1e-5f * v.g);
      EXPECT_NEAR(p.b, v.b, 1e-5f * v.b);
    }
  }
}

TEST(Prefilter, HemisphereMatchesAnalyticAndMonteCarlo) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::upper_hemisphere_environment(128), {16, 64, 0});
  auto hemi = [](const oracle::Dir& w) { return w.y > 0.0 ? 1.0 : 0.0; };
  for (const oracle::Dir n : {oracle::Dir{0, 1, 0}, oracle::Dir{0, -1, 0}, oracle::Dir{1, 0, 0}, oracle::Dir{0, 0, -1},
                              oracle::Dir{0.6, 0.8, 0}}) {
    const double got = envmap::sample_cubemap(irr.map, {n.x, n.y, n.z}).r;
    EXPECT_NEAR(got, oracle::hemisphere_irradiance(n), 0.02) << n.x << "," << n.y << "," << n.z;
    EXPECT_NEAR(got, oracle::mc_irradiance(hemi, n, 200000, 42), 0.02);
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const Direction d = random_direction(rng);
    ASSERT_NEAR(envmap::sample_cubemap(irr.map, d).r, 0.5 * (1.0 + d.y), 0.02);
  }
}

TEST(Prefilter, LinearRadianceGivesTwoThirdsCosineLobe) {
  const Vec3 a{0.3, 0.5, -0.2};
  const IrradianceCubemap irr = prefilter_diffuse(linear_env(128, a), {16, 64, 0});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Direction n = random_direction(rng);
    const double expected = 1.0 + 2.0 / 3.0 * dot(a, n);
    ASSERT_NEAR(envmap::sample_cubemap(irr.map, n).r, expected, 0.01 * expected);
  }
}

TEST(Prefilter, PreservesMeanRadiance) {
  const EquirectEnv env = synthetic::sky_environment(128);
  double sum = 0.0, wsum = 0.0;
  for (int y = 0; y < env.height(); ++y) {
    const double w = std::sin((y + 0.5) / env.height() * static_cast<double>(oracle::kPiL));
    for (int x = 0; x < env.width(); ++x) {
      const Rgb& c = env.image().at(x, y);
      sum += w * (0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b);
      wsum += w;
    }
  }
  const double env_mean = sum / wsum;
  EXPECT_NEAR(mean_irradiance(prefilter_diffuse(env, {16, 64, 0})), env_mean, 0.01 * env_mean);
}

TEST(Prefilter, YawEquivariance) {
  const EquirectEnv env = synthetic::sky_environment(128);
  const IrradianceCubemap base = prefilter_diffuse(env, {16, 64, 0});
  const IrradianceCubemap turned = prefilter_diffuse(env.with_rotation(90.0), {16, 64, 0});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Direction n = random_direction(rng);
    const double a = envmap::sample_cubemap(turned.map, n).r;
    const double b = envmap::sample_cubemap(base.map, envmap::rotate_yaw(n, -90.0)).r;
    ASSERT_NEAR(a, b, 0.01 * b);
  }
}

TEST(Prefilter, DeterministicAcrossThreadCounts) {
  const EquirectEnv env = synthetic::sky_environment(256);
  const IrradianceCubemap a = prefilter_diffuse(env, {8, 64, 1});
  const IrradianceCubemap b = prefilter_diffuse(env, {8, 64, 5});
  for (int f = 0; f < 6; ++f) EXPECT_EQ(a.map.face(static_cast<CubeFace>(f)), b.map.face(static_cast<CubeFace>(f)));
}

TEST(Prefilter, LinearInEnvironment) {
  const EquirectEnv sky = synthetic::sky_environment(128);
  HdrImage scaled = sky.image();
  for (auto& p : scaled.data()) p = {4.0f * p.r, 4.0f * p.g, 4.0f * p.b};
  const IrradianceCubemap a = prefilter_diffuse(sky, {8, 64, 1});
  const IrradianceCubemap b = prefilter_diffuse(EquirectEnv(std::move(scaled)), {8, 64, 1});
  for (int f = 0; f < 6; ++f) {
    const HdrImage& fa = a.map.face(static_cast<CubeFace>(f));
    const HdrImage& fb = b.map.face(static_cast<CubeFace>(f));
    for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(fb[i], (Rgb{4.0f * fa[i].r, 4.0f * fa[i].g, 4.0f * fa[i].b}));
  }
}

TEST(Prefilter, NeverExceedsPeakRadiance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  HdrImage img(128, 64);
  float peak = 0.0f;
  for (auto& p : img.data()) {
    const float v = std::pow(u(rng), 8.0f) * 100.0f;
    p = {v, v, v};
    peak = std::max(peak, v);
  }
  const IrradianceCubemap irr = prefilter_diffuse(EquirectEnv(std::move(img)), {8, 64, 0});
  for (int f = 0; f < 6; ++f) {
    for (const Rgb& p : irr.map.face(static_cast<CubeFace>(f)).data()) EXPECT_LE(p.r, peak * 1.01f);
  }
}

TEST(Prefilter, SmoothAcrossAdjacentTexels) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::sky_environment(256), {32, 64, 0});
  double worst = 0.0;
  for (int f = 0; f < 6; ++f) {
    const HdrImage& face = irr.map.face(static_cast<CubeFace>(f));
    for (int y = 0; y < 32; ++y) {
      for (int x = 0; x + 1 < 32; ++x) {
        const double a = face.at(x, y).r, b = face.at(x + 1, y).r;
        worst = std::max(worst, std::abs(a - b) / std::max(a, b));
      }
    }
  }
  EXPECT_LT(worst, 0.1);
}

TEST(Prefilter, RejectsTinyFaces) {
  EXPECT_THROW(prefilter_diffuse(synthetic::constant_environment(16, {1, 1, 1}), {3, 64, 1}), Error);
}

TEST(Downsample, ConstantAndMeanArePreserved) {
  const Rgb v{1.0f, 2.0f, 4.0f};
  const EquirectEnv c = downsample_environment(synthetic::constant_environment(512, v, 30.0), 32);
  EXPECT_EQ(c.width(), 64);
  EXPECT_EQ(c.height(), 32);
  EXPECT_DOUBLE_EQ(c.rotation_deg(), 30.0);
  for (const Rgb& p : c.image().data()) {
    EXPECT_NEAR(p.r, v.r, 1e-5f);
    EXPECT_NEAR(p.b, v.b, 1e-5f);
  }

  const EquirectEnv sky = synthetic::sky_environment(512);
  const EquirectEnv small = downsample_environment(sky, 64);
  auto weighted_mean = [](const EquirectEnv& e) {
    double s = 0.0, w = 0.0;
    for (int y = 0; y < e.height(); ++y) {
      const double wy = std::sin((y + 0.5) / e.height() * static_cast<double>(oracle::kPiL));
      for (int x = 0; x < e.width(); ++x) s += wy * e.image().at(x, y).g, w += wy;
    }
    return s / w;
  };
  EXPECT_NEAR(weighted_mean(small), weighted_mean(sky), 1e-3 * weighted_mean(sky));
}

TEST(Downsample, SmallEnvironmentIsUntouchedAndPassesAreCounted) {
  const EquirectEnv env = synthetic::sky_environment(64);
  const auto before = envmap::environment_pass_count();
  EXPECT_EQ(downsample_environment(env, 64).image(), env.image());
  EXPECT_EQ(envmap::environment_pass_count(), before);
  downsample_environment(synthetic::sky_environment(256), 64);
  EXPECT_EQ(envmap::environment_pass_count(), before + 1);
  EXPECT_THROW(downsample_environment(env, 0), Error);
}

TEST(DiffuseLightMapTest, SamplesValidNormalsOnly) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::sky_environment(128), {8, 64, 0});
  const NormalMap normals = synthetic::sphere_normals(40, 30);
  const DiffuseLightMap light = diffuse_light_map(irr, normals, 0.0, 3);
  ASSERT_TRUE(light.irradiance.same_shape(normals.normals));
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 40; ++x) {
      if (!normals.is_valid(x, y)) {
        EXPECT_EQ(light.irradiance.at(x, y), Rgb{});
        EXPECT_EQ(light.valid.at(x, y), 0);
        continue;
      }
      const Vec3f n = normals.normals.at(x, y);
      EXPECT_EQ(light.irradiance.at(x, y), envmap::sample_cubemap(irr.map, {n.x, n.y, n.z}));
    }
  }
}

TEST(DiffuseLightMapTest, CameraYawRotatesNormals) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::sky_environment(128), {8, 64, 0});
  NormalMap normals(1, 1);
  normals.set(0, 0, {0.0f, 0.0f, 1.0f});
  const DiffuseLightMap light = diffuse_light_map(irr, normals, 90.0);
  EXPECT_EQ(light.irradiance.at(0, 0), envmap::sample_cubemap(irr.map, {1, 0, 0}));
}

TEST(DiffuseLightMapTest, SphereUnderHemisphereMatchesAnalytic) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::upper_hemisphere_environment(256), {32, 64, 0});
  const NormalMap normals = synthetic::sphere_normals(128, 128);
  const DiffuseLightMap light = diffuse_light_map(irr, normals);
  double sq = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < 128; ++y) {
    for (int x = 0; x < 128; ++x) {
      if (!normals.is_valid(x, y)) continue;
      const Vec3f nv = normals.normals.at(x, y);
      const double d = light.irradiance.at(x, y).r - oracle::hemisphere_irradiance({nv.x, nv.y, nv.z});
      sq += d * d;
      ++n;
    }
  }
  EXPECT_LT(std::sqrt(sq / static_cast<double>(n)), 0.03 * 0.5);
}

TEST(DiffuseLightMapTest, ConstantCubemapGivesConstantLight) {
  const IrradianceCubemap irr{envmap::Cubemap(6, {0.5f, 1.5f, 2.5f})};
  const DiffuseLightMap light = diffuse_light_map(irr, synthetic::sphere_normals(30, 20));
  for (std::size_t i = 0; i < light.irradiance.size(); ++i) {
    EXPECT_EQ(light.irradiance[i], light.valid[i] ? (Rgb{0.5f, 1.5f, 2.5f}) : Rgb{});
  }
}

TEST(MeanIrradiance, ConstantEnvironmentLuminance) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::constant_environment(64, {1.0f, 2.0f, 3.0f}), {8, 64, 0});
  EXPECT_NEAR(mean_irradiance(irr), 0.2126 + 0.7152 * 2 + 0.0722 * 3, 1e-5);
}

TEST(ExportImport, RoundTripThroughRadianceFiles) {
  const IrradianceCubemap irr = prefilter_diffuse(synthetic::sky_environment(128), {8, 64, 0});
  const auto dir = std::filesystem::temp_directory_path() / "hdrelight_irr_roundtrip";
  std::filesystem::remove_all(dir);
  export_irradiance(irr, dir, 45.0);
  for (const char* f : {"irradiance_px.hdr", "irradiance_nz.hdr", "manifest.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const IrradianceCubemap back = import_irradiance(dir);
  ASSERT_EQ(back.map.face_size(), 8);
  for (int f = 0; f < 6; ++f) {
    const HdrImage& a = irr.map.face(static_cast<CubeFace>(f));
    const HdrImage& b = back.map.face(static_cast<CubeFace>(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const float m = std::max({a[i].r, a[i].g, a[i].b});
      EXPECT_NEAR(b[i].r, a[i].r, m / 256.0f);
      EXPECT_NEAR(b[i].b, a[i].b, m / 256.0f);
    }
  }
  std::filesystem::remove(dir / "irradiance_py.hdr");
  EXPECT_THROW(import_irradiance(dir), Error);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(import_irradiance(dir), Error);
}

}  // namespace
}  // namespace hdrelight::irradiance
