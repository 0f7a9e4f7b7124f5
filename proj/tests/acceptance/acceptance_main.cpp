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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdrelight/hdr_io.hpp"
#include "hdrelight/irradiance.hpp"
#include "hdrelight/metrics.hpp"
#include "hdrelight/pipeline.hpp"
#include "hdrelight/pq_codec.hpp"
#include "hdrelight/references.hpp"
#include "hdrelight/relight.hpp"
#include "hdrelight/synthetic.hpp"
#include "hdrelight/temporal.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hdrelight;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
  template <typename T>
  void note(const std::string& key, const T& value) {
    detail << " " << key << "=" << value;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Outcome&)> body;
};

envmap::Direction random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalize(Vec3{g(rng), g(rng), g(rng)});
}

// --- 1 ---------------------------------------------------------------------------

void pq_fixed_points(Outcome& o) {
  const double e = pq::pq_inverse_eotf(10000.0);
  const double y = pq::pq_eotf(1.0);
  o.note("inv_eotf(10000)", e);
  o.note("eotf(1)", y);
  o.check(e == 1.0, "inverse_eotf(10000) == 1");
  o.check(y == 10000.0, "eotf(1) == 10000");
  o.check(pq::quantize_value(10000.0) == 198, "quantize(10000) == 198");
  o.check(pq::quantize_value(200000.0) == 255, "quantize(200000) == 255");
  o.note("q(10000)", static_cast<int>(pq::quantize_value(10000.0)));
  o.note("q(200000)", static_cast<int>(pq::quantize_value(200000.0)));
}

// --- 2 ---------------------------------------------------------------------------

void pq_round_trips(Outcome& o) {
  int code_failures = 0;
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<std::uint8_t>(c);
    if (pq::quantize_value(pq::dequantize_value(code)) != code) ++code_failures;
  }
  o.note("code_mismatches", code_failures);
  o.check(code_failures == 0, "256-code identity");

  // 0 plus 9999 log-spaced points up to 200000.
  double worst = 0.0;
  const double lo = std::log10(1e-6), hi = std::log10(200000.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = i == 0 ? 0.0 : std::pow(10.0, lo + (hi - lo) * (i - 1) / 9998.0);
    const double back = pq::pq_eotf(pq::pq_inverse_eotf(x));
    const double err = x == 0.0 ? std::abs(back) : std::abs(back - x) / x;
    worst = std::max(worst, err);
  }
  o.note("max_rel_err", worst);
  o.check(worst < 1e-9, "continuous round trip < 1e-9");
}

// --- 3 ---------------------------------------------------------------------------

void irradiance_checks(Outcome& o) {
  const irradiance::PrefilterOptions opts{32, 64, 0};
  const Rgb c{0.7f, 1.3f, 2.9f};
  const auto flat = irradiance::prefilter_diffuse(synthetic::constant_environment(512, c), opts);
  double worst_const = 0.0;
  for (int f = 0; f < 6; ++f) {
    for (const Rgb& p : flat.map.face(static_cast<envmap::CubeFace>(f)).data()) {
      worst_const = std::max({worst_const, std::abs(p.r / c.r - 1.0), std::abs(p.g / c.g - 1.0), std::abs(p.b / c.b - 1.0)});
    }
  }
  o.note("const_max_rel_dev", worst_const);
  o.check(worst_const <= 0.01, "constant env within 1%");

  const auto hemi = irradiance::prefilter_diffuse(synthetic::upper_hemisphere_environment(512), opts);
  auto radiance = [](const oracle::Dir& w) { return w.y > 0.0 ? 1.0 : 0.0; };
  struct Probe {
    const char* name;
    oracle::Dir n;
  };
  const Probe probes[] = {{"+Y", {0, 1, 0}},   {"-Y", {0, -1, 0}},   {"+X", {1, 0, 0}},
                          {"-Z", {0, 0, -1}},  {"diag", {0.7071067811865476, 0, 0.7071067811865476}}};
  double worst_analytic = 0.0, worst_mc = 0.0;
  std::uint64_t seed = 1;
  for (const Probe& p : probes) {
    const double got = envmap::sample_cubemap(hemi.map, {p.n.x, p.n.y, p.n.z}).r;
    const double analytic = oracle::hemisphere_irradiance(p.n);
    const double mc = oracle::mc_irradiance(radiance, p.n, 1000000, seed++);
    worst_analytic = std::max(worst_analytic, std::abs(got - analytic));
    worst_mc = std::max(worst_mc, std::abs(got - mc));
    o.note(std::string("E(") + p.name + ")", got);
  }
  o.note("max_dev_analytic", worst_analytic);
  o.note("max_dev_mc", worst_mc);
  o.check(worst_analytic <= 0.02, "hemisphere vs analytic within 2%");
  o.check(worst_mc <= 0.02, "hemisphere vs Monte Carlo within 2%");
}

// --- 4 ---------------------------------------------------------------------------

void shading_checks(Outcome& o) {
  const Vec3 one{1, 1, 1};
  const Vec3 r = relight::shade_pixel(one, relight::low_saturation(one), one);
  o.note("R(1,1,1)", r.x);
  o.check(std::abs(r.x - 0.689) < 1e-12 && std::abs(r.y - 0.689) < 1e-12 && std::abs(r.z - 0.689) < 1e-12,
          "R = 0.689");

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_zero = 0.0, worst_lin = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Vec3 i{u(rng), u(rng), u(rng)};
    const Vec3 ls = relight::low_saturation(i);
    const Vec3 z = relight::shade_pixel(i, ls, {});
    worst_zero = std::max({worst_zero, std::abs(z.x - 0.29 * i.x), std::abs(z.y - 0.29 * i.y), std::abs(z.z - 0.29 * i.z)});

    const Vec3 d1{4 * u(rng), 4 * u(rng), 4 * u(rng)};
    const Vec3 d2{4 * u(rng), 4 * u(rng), 4 * u(rng)};
    const double a = 3 * u(rng), b = 3 * u(rng);
    const Vec3 lhs = relight::shade_pixel(i, ls, d1 * a + d2 * b) - z;
    const Vec3 rhs = (relight::shade_pixel(i, ls, d1) - z) * a + (relight::shade_pixel(i, ls, d2) - z) * b;
    worst_lin = std::max({worst_lin, std::abs(lhs.x - rhs.x), std::abs(lhs.y - rhs.y), std::abs(lhs.z - rhs.z)});
  }
  o.note("max_dev_D0", worst_zero);
  o.note("max_dev_linearity", worst_lin);
  o.check(worst_zero <= 1e-15, "D = 0 gives 0.29 I");
  o.check(worst_lin <= 1e-12, "linear in D");
}

// --- 5 ---------------------------------------------------------------------------

double pipeline_flicker(bool filter) {
  pipeline::PipelineConfig cfg;
  cfg.width = 128;
  cfg.height = 96;
  cfg.face_size = 16;
  cfg.temporal_filter = filter;
  pipeline::SphereFrameProvider provider(cfg.width, cfg.height, 24, 0.05, 21);
  std::vector<HdrImage> frames;
  std::vector<AlphaMask> masks;
  pipeline::run_relight(cfg, synthetic::sky_environment(256), provider, [&](const pipeline::FrameOutput& f) {
    frames.push_back(f.relit);
    masks.push_back(f.mask);
  });
  return metrics::flicker_score(frames, masks).mean;
}

void temporal_checks(Outcome& o) {
  const NormalMap base = synthetic::sphere_normals(256, 192);
  temporal::NormalHistory fixed;
  double worst = 0.0;
  for (int t = 0; t < 6; ++t) {
    const NormalMap out = fixed.push_and_filter(base);
    if (!(out.valid == base.valid)) worst = 1.0;
    for (std::size_t i = 0; i < base.normals.size(); ++i) {
      worst = std::max({worst, std::abs(static_cast<double>(out.normals[i].x) - base.normals[i].x),
                        std::abs(static_cast<double>(out.normals[i].y) - base.normals[i].y),
                        std::abs(static_cast<double>(out.normals[i].z) - base.normals[i].z)});
    }
  }
  o.note("fixed_point_max_dev", worst);
  o.check(worst == 0.0, "constant sequence is a fixed point");

  // Flat field with i.i.d. jitter, 400 x 300 = 120000 pixels.
  NormalMap flat(400, 300);
  for (int y = 0; y < 300; ++y) {
    for (int x = 0; x < 400; ++x) flat.set(x, y, {0, 0, 1});
  }
  // Variance of the plain mean, before renormalization.
  temporal::NormalHistory h({false, 1e-4});
  double vin = 0.0, vout = 0.0;
  for (int t = 0; t < 10; ++t) {
    const NormalMap noisy = synthetic::jitter_normals(flat, 0.01, 5, static_cast<std::uint64_t>(t));
    const NormalMap out = h.push_and_filter(noisy);
    if (t < 2) continue;
    for (std::size_t i = 0; i < flat.normals.size(); ++i) {
      vin += static_cast<double>(noisy.normals[i].x) * noisy.normals[i].x + static_cast<double>(noisy.normals[i].y) * noisy.normals[i].y;
      vout += static_cast<double>(out.normals[i].x) * out.normals[i].x + static_cast<double>(out.normals[i].y) * out.normals[i].y;
    }
  }
  const double ratio = vin / vout;
  o.note("variance_ratio", ratio);
  o.check(std::abs(ratio - 3.0) <= 0.3, "variance attenuation 3 +- 10%");

  const double off = pipeline_flicker(false);
  const double on = pipeline_flicker(true);
  o.note("flicker_off", off);
  o.note("flicker_on", on);
  o.check(on < off, "flicker with filter < without");
}

// --- 6 ---------------------------------------------------------------------------

void sphere_checks(Outcome& o) {
  const auto irr = irradiance::prefilter_diffuse(synthetic::constant_environment(512, {1.0f, 1.0f, 1.0f}), {32, 64, 0});
  const auto diffuse = references::render_diffuse_sphere(irr, {256, 0.5});
  double lo = 1e30, hi = -1e30, sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < diffuse.radiance.size(); ++i) {
    if (diffuse.alpha[i] == 0.0f) continue;
    for (float v : {diffuse.radiance[i].r, diffuse.radiance[i].g, diffuse.radiance[i].b}) {
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
      sum += v;
      ++n;
    }
  }
  const double flatness = (hi - lo) / (sum / static_cast<double>(n));
  o.note("diffuse_rel_range", flatness);
  o.check(flatness <= 1e-3, "diffuse sphere flat to 1e-3");

  const int ew = 128, eh = 64;
  const references::SphereSpec spec{256, 0.5};
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ux(0, ew - 1), uy(8, eh - 9);
  double worst = 0.0;
  int tested = 0;
  while (tested < 12) {
    const int tx = ux(rng), ty = uy(rng);
    const oracle::Dir t = oracle::uv_dir((tx + 0.5) / ew, (ty + 0.5) / eh);
    if (t.z < -0.7) continue;  // reflections of the region behind the sphere crowd into the rim
    HdrImage img(ew, eh);
    img.at(tx, ty) = {1.0f, 1.0f, 1.0f};
    const auto mirror = references::render_mirror_sphere(envmap::EquirectEnv(std::move(img)), spec);
    int bx = 0, by = 0;
    float best = -1.0f;
    for (int y = 0; y < spec.size; ++y) {
      for (int x = 0; x < spec.size; ++x) {
        if (mirror.radiance.at(x, y).r > best) best = mirror.radiance.at(x, y).r, bx = x, by = y;
      }
    }
    const auto [dx, dy] = oracle::invert_mirror(t);
    const auto [ex, ey] = references::disk_to_pixel(spec, dx, dy);
    worst = std::max({worst, std::abs(bx - ex), std::abs(by - ey)});
    ++tested;
  }
  o.note("mirror_texels", tested);
  o.note("mirror_max_offset_px", worst);
  o.check(worst <= 1.0, "mirror one-hot within 1 texel");
}

// --- 7 ---------------------------------------------------------------------------

void format_checks(Outcome& o) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> logu(-6.0, 6.0), u(0.0, 1.0);
  HdrImage img(257, 129);
  for (auto& p : img.data()) {
    const double scale = std::pow(10.0, logu(rng));
    p = {static_cast<float>(scale * u(rng)), static_cast<float>(scale * u(rng)), static_cast<float>(scale * u(rng))};
  }
  const HdrImage back = io::read_radiance_hdr(io::write_radiance_hdr(img));
  double worst = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double m = std::max({img[i].r, img[i].g, img[i].b});
    if (m == 0.0) continue;
    worst = std::max({worst, std::abs(back[i].r - img[i].r) / m, std::abs(back[i].g - img[i].g) / m,
                      std::abs(back[i].b - img[i].b) / m});
  }
  o.note("rgbe_max_err_over_max_channel", worst);
  o.check(worst <= 1.0 / 256.0, "RGBE round trip <= 1/256");

  NormalMap normals(300, 200);
  int invalid = 0;
  for (int y = 0; y < 200; ++y) {
    for (int x = 0; x < 300; ++x) {
      const auto d = random_direction(rng);
      normals.set(x, y, {static_cast<float>(d.x), static_cast<float>(d.y), static_cast<float>(d.z)});
    }
  }
  const NormalMap decoded = io::read_normal_map(io::write_normal_map_u16(normals));
  double worst_n = 0.0;
  for (int y = 0; y < 200; ++y) {
    for (int x = 0; x < 300; ++x) {
      if (!decoded.is_valid(x, y)) {
        ++invalid;
        continue;
      }
      const Vec3f a = normals.normals.at(x, y), b = decoded.normals.at(x, y);
      worst_n = std::max({worst_n, std::abs(static_cast<double>(a.x) - b.x), std::abs(static_cast<double>(a.y) - b.y),
                          std::abs(static_cast<double>(a.z) - b.z)});
    }
  }
  o.note("normal_max_err_x65535", worst_n * 65535.0);
  o.check(invalid == 0, "decoded normals valid");
  o.check(worst_n <= 2.0 / 65535.0, "normal map within 2/65535");
}

// --- 8 ---------------------------------------------------------------------------

std::vector<std::string> relight_outputs(const fs::path& root, const std::string& out) {
  pipeline::PipelineConfig cfg;
  cfg.root = root;
  cfg.environment = "env.hdr";
  cfg.output_dir = out;
  cfg.width = 256;
  cfg.height = 192;
  cfg.synthetic_frames = 8;
  cfg.synthetic_jitter = 0.04;
  cfg.seed = 17;
  pipeline::run_relight(cfg);
  std::vector<std::string> frames;
  for (std::size_t i = 0; i < 8; ++i) {
    const io::Bytes b = io::read_file(root / out / pipeline::frame_file_name(i, ".ppm"));
    frames.emplace_back(b.begin(), b.end());
  }
  return frames;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void determinism_amortization(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "hdrelight_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  io::write_file(root / "env.hdr", io::write_radiance_hdr(synthetic::sky_environment(1024).image()));
  const bool identical = relight_outputs(root, "run_a") == relight_outputs(root, "run_b");
  fs::remove_all(root);
  o.note("byte_identical", identical ? "yes" : "no");
  o.check(identical, "identical runs give identical bytes");

  // Alternate the two widths so drift affects both equally.
  pipeline::PipelineConfig cfg;
  cfg.width = 512;
  cfg.height = 384;
  const envmap::EquirectEnv small = synthetic::sky_environment(512);
  const envmap::EquirectEnv large = synthetic::sky_environment(2048);
  std::vector<double> t_small, t_large;
  std::uint64_t passes = 0;
  for (int rep = 0; rep < 7; ++rep) {
    for (const auto* env : {&small, &large}) {
      pipeline::SphereFrameProvider provider(cfg.width, cfg.height, 16, 0.03, 2);
      const auto r = pipeline::run_relight(cfg, *env, provider, nullptr);
      passes += r.environment_passes_in_loop;
      (env == &small ? t_small : t_large).push_back(r.loop_ms / static_cast<double>(r.frames));
    }
  }
  const double ms = median(t_small), ml = median(t_large);
  auto spread = [](const std::vector<double>& v, double m) {
    std::vector<double> dev;
    for (double x : v) dev.push_back(std::abs(x - m));
    return 1.4826 * median(dev);  // robust standard deviation
  };
  const double noise = std::max(spread(t_small, ms), spread(t_large, ml));
  const double tolerance = std::max(3.0 * noise, 0.10 * ms);
  o.note("per_frame_ms_512", ms);
  o.note("per_frame_ms_2048", ml);
  o.note("noise_ms", noise);
  o.note("tolerance_ms", tolerance);
  o.note("env_passes_in_loop", passes);
  o.check(passes == 0, "no environment-sized work per frame");
  o.check(std::abs(ml - ms) <= tolerance, "per-frame time independent of env width");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "pq_fixed_points", 1.0, pq_fixed_points},
      {2, "pq_round_trips", 1.0, pq_round_trips},
      {3, "irradiance", 30.0, irradiance_checks},
      {4, "shading", 1.0, shading_checks},
      {5, "temporal", 30.0, temporal_checks},
      {6, "spheres", 10.0, sphere_checks},
      {7, "formats", 5.0, format_checks},
      {8, "determinism_amortization", 120.0, determinism_amortization},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = Clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " EXCEPTION[" << e.what() << "]";
    }
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    o.check(s < c.limit_s, "runtime limit");
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion=%d name=%s time_s=%.3f limit_s=%g%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), s,
                c.limit_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%s %d/%zu criteria passed\n", failed == 0 ? "PASS" : "FAIL", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
