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

// hdrelight command-line front end. Every path argument is resolved against
// --root. Exit codes: 0 success, 2 usage or configuration error, 3 I/O or
// container decode error, 4 any other failure.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hdrelight/envmap.hpp"
#include "hdrelight/hdr_io.hpp"
#include "hdrelight/irradiance.hpp"
#include "hdrelight/metrics.hpp"
#include "hdrelight/pipeline.hpp"
#include "hdrelight/pq_codec.hpp"
#include "hdrelight/references.hpp"
#include "hdrelight/synthetic.hpp"

namespace fs = std::filesystem;
using namespace hdrelight;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFailure = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return kExitUsage;
    case ErrorCode::kIo:
    case ErrorCode::kBadSignature:
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kTruncated:
    case ErrorCode::kUnsupportedOrientation:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kMissingFrame:
      return kExitIo;
    default:
      return kExitFailure;
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n' || c == '\r') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out + "\"";
}

int report(std::string_view kind, int code, std::string_view message, std::optional<std::size_t> offset = {}) {
  std::cerr << "error: kind=" << kind << " exit=" << code;
  if (offset) std::cerr << " offset=" << *offset;
  std::cerr << " message=" << quote(message) << "\n";
  return code;
}

struct Context {
  fs::path root;
  fs::path config;
  int threads = 0;

  fs::path path(const fs::path& p) const { return (p.empty() || p.is_absolute()) ? p : root / p; }
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

HdrImage read_hdr(const fs::path& p) {
  const io::Bytes bytes = io::read_file(p);
  return p.extension() == ".pfm" ? io::read_pfm(bytes) : io::read_radiance_hdr(bytes);
}

void write_hdr(const fs::path& p, const HdrImage& img) {
  if (p.extension() == ".pfm") {
    io::write_file(p, io::write_pfm(img));
  } else if (p.extension() == ".hdr") {
    io::write_file(p, io::write_radiance_hdr(img));
  } else {
    throw UsageError("output must end in .hdr or .pfm: " + p.string());
  }
}

void write_text(const fs::path& p, const std::string& text) {
  io::write_file(p, io::ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Digit-stem files with one of the extensions, in index order.
std::vector<fs::path> numbered(const fs::path& dir, std::initializer_list<std::string_view> exts) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  std::map<std::size_t, fs::path> found;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string stem = e.path().stem().string();
    if (!e.is_regular_file() || stem.empty() || !std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    if (std::find(exts.begin(), exts.end(), e.path().extension().string()) == exts.end()) continue;
    found.emplace(std::stoul(stem), e.path());
  }
  std::vector<fs::path> out;
  for (const auto& [index, p] : found) {
    if (index != out.size()) throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(out.size()) + " missing in " + dir.string());
    out.push_back(p);
  }
  return out;
}

// --- quantize / dequantize -----------------------------------------------------

struct CodecArgs {
  std::string in;
  std::string out;
};

void run_quantize(const Context& ctx, const CodecArgs& a) {
  require(a.in, "--in");
  require(a.out, "--out");
  const HdrImage img = read_hdr(ctx.path(a.in));
  io::write_file(ctx.path(a.out), io::write_ldr(io::to_ldr(pq::quantize_hdr(img, ctx.threads))));
  std::cout << "wrote=" << a.out << " width=" << img.width() << " height=" << img.height() << "\n";
}

void run_dequantize(const Context& ctx, const CodecArgs& a) {
  require(a.in, "--in");
  require(a.out, "--out");
  const LdrImage ldr = io::read_ldr(io::read_file(ctx.path(a.in)));
  write_hdr(ctx.path(a.out), pq::dequantize_hdr(io::to_quantized(ldr)));
  std::cout << "wrote=" << a.out << " width=" << ldr.width << " height=" << ldr.height << "\n";
}

// --- irradiance / spheres ------------------------------------------------------

struct IrradianceArgs {
  std::string env;
  std::string out;
  double yaw = 0.0;
  int face_size = 32;
  int source_height = 64;
};

irradiance::IrradianceCubemap prefilter(const Context& ctx, const envmap::EquirectEnv& env, const IrradianceArgs& a) {
  return irradiance::prefilter_diffuse(env, {a.face_size, a.source_height, ctx.threads});
}

void run_irradiance(const Context& ctx, const IrradianceArgs& a) {
  require(a.env, "--env");
  require(a.out, "--out");
  const envmap::EquirectEnv env(read_hdr(ctx.path(a.env)), a.yaw);
  const auto irr = prefilter(ctx, env, a);
  irradiance::export_irradiance(irr, ctx.path(a.out), a.yaw);
  std::cout << "wrote=" << a.out << " face_size=" << a.face_size << " mean_irradiance=" << irradiance::mean_irradiance(irr)
            << "\n";
}

struct SphereArgs {
  IrradianceArgs light;
  int size = 256;
  double radius = 0.5;
};

void run_spheres(const Context& ctx, const SphereArgs& a) {
  require(a.light.env, "--env");
  require(a.light.out, "--out");
  const envmap::EquirectEnv env(read_hdr(ctx.path(a.light.env)));
  const references::SphereSpec spec{a.size, a.radius};
  references::validate(spec);
  const fs::path out = ctx.path(a.light.out);
  const auto diffuse = references::render_diffuse_sphere(prefilter(ctx, env, a.light), spec, a.light.yaw);
  const auto mirror = references::render_mirror_sphere(env, spec, a.light.yaw);
  io::write_file(out / "diffuse.hdr", io::write_radiance_hdr(diffuse.radiance));
  io::write_file(out / "mirror.hdr", io::write_radiance_hdr(mirror.radiance));
  io::write_file(out / "mask.pgm", io::write_ldr(io::mask_to_ldr(diffuse.alpha)));
  std::cout << "wrote=" << a.light.out << " size=" << a.size << "\n";
}

// --- persp-extract -------------------------------------------------------------

struct PerspArgs {
  std::string env;
  std::string out;
  envmap::ViewSpec view{0.0, 0.0, 0.0, 60.0, 256, 256};
  int augment = 0;
  std::uint64_t seed = 0;
};

void run_persp(const Context& ctx, const PerspArgs& a) {
  require(a.env, "--env");
  require(a.out, "--out");
  const envmap::EquirectEnv env(read_hdr(ctx.path(a.env)));
  if (a.augment <= 0) {
    write_hdr(ctx.path(a.out), envmap::extract_perspective(env, a.view, ctx.threads));
    std::cout << "wrote=" << a.out << "\n";
    return;
  }
  const fs::path dir = ctx.path(a.out);
  const auto samples = envmap::augment_panorama(env, a.augment, a.seed, a.view.width, a.view.height);
  std::ostringstream csv;
  csv << "file,yaw_deg,pitch_deg,roll_deg,fov_h_deg\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string name = pipeline::frame_file_name(i, ".hdr");
    io::write_file(dir / name, io::write_radiance_hdr(samples[i].image));
    const auto& v = samples[i].view;
    csv << name << "," << v.yaw_deg << "," << v.pitch_deg << "," << v.roll_deg << "," << v.fov_h_deg << "\n";
  }
  write_text(dir / "views.csv", csv.str());
  std::cout << "wrote=" << a.out << " views=" << samples.size() << "\n";
}

// --- relight / bench -----------------------------------------------------------

// Flags that mirror configuration keys; set flags override the config file.
class ConfigFlags {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    entries_.push_back({key, app->add_option(flag, values_[key], help)});
  }

  pipeline::PipelineConfig apply(pipeline::PipelineConfig cfg) const {
    std::string text;
    for (const auto& e : entries_) {
      if (e.option->count() > 0) text += e.key + " = " + values_.at(e.key) + "\n";
    }
    return pipeline::parse_config(text, std::move(cfg));
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* option;
  };
  std::vector<Entry> entries_;
  std::map<std::string, std::string> values_;
};

pipeline::PipelineConfig base_config(const Context& ctx) {
  pipeline::PipelineConfig cfg;
  if (!ctx.config.empty()) cfg = pipeline::load_config_file(ctx.path(ctx.config), cfg);
  return cfg;
}

void run_relight_cmd(const Context& ctx, const ConfigFlags& flags) {
  pipeline::PipelineConfig cfg = flags.apply(base_config(ctx));
  cfg.root = ctx.root;
  if (ctx.threads > 0) cfg.threads = ctx.threads;
  const pipeline::TimingReport r = pipeline::run_relight(cfg);
  std::cout << "wrote=" << cfg.output_dir.string() << " frames=" << r.frames << " fps=" << r.fps
            << " precompute_ms=" << r.precompute_ms << "\n";
}

struct BenchArgs {
  std::vector<int> env_widths{512, 2048};
  int frames = 16;
  int repeats = 3;
  std::string csv;
};

void run_bench(const Context& ctx, const ConfigFlags& flags, const BenchArgs& a) {
  pipeline::PipelineConfig cfg = base_config(ctx);
  cfg.width = 512;
  cfg.height = 384;
  cfg = flags.apply(cfg);
  cfg.root = ctx.root;
  if (ctx.threads > 0) cfg.threads = ctx.threads;
  if (a.frames < 1 || a.repeats < 1) throw UsageError("--frames and --repeats must be >= 1");

  std::ostringstream csv;
  csv << "env_width,stage,mean_ms,p50_ms,p95_ms\n";
  for (int w : a.env_widths) {
    if (w < 2 || w % 2 != 0) throw UsageError("environment widths must be even and >= 2");
    const envmap::EquirectEnv env = synthetic::sky_environment(w);
    pipeline::TimingAccumulator acc;
    pipeline::TimingReport r;
    for (int rep = 0; rep < a.repeats; ++rep) {
      pipeline::SphereFrameProvider provider(cfg.width, cfg.height, static_cast<std::size_t>(a.frames),
                                             cfg.synthetic_jitter, cfg.seed);
      r = pipeline::run_relight(cfg, env, provider, nullptr, &acc);
    }
    double per_frame = 0.0;
    for (const auto& s : r.stages) {
      csv << w << "," << s.name << "," << s.mean_ms << "," << s.p50_ms << "," << s.p95_ms << "\n";
      per_frame += s.mean_ms;
    }
    csv << w << ",precompute," << r.precompute_ms << "," << r.precompute_ms << "," << r.precompute_ms << "\n";
    std::cout << "env_width=" << w << " frames=" << r.frames << " per_frame_ms=" << per_frame
              << " precompute_ms=" << r.precompute_ms << " fps=" << r.fps
              << " environment_passes_in_loop=" << r.environment_passes_in_loop << "\n";
  }
  if (!a.csv.empty()) write_text(ctx.path(a.csv), csv.str());
}

// --- flicker -------------------------------------------------------------------

struct FlickerArgs {
  std::string frames;
  std::string masks;
  std::string csv;
};

void run_flicker(const Context& ctx, const FlickerArgs& a) {
  require(a.frames, "--frames");
  const auto frame_files = numbered(ctx.path(a.frames), {".ppm", ".pam"});
  std::vector<HdrImage> frames;
  for (const auto& p : frame_files) frames.push_back(metrics::ldr_to_unit(io::read_ldr(io::read_file(p))));
  if (frames.empty()) throw Error(ErrorCode::kMissingFrame, "no frames found in " + a.frames);

  std::vector<AlphaMask> masks;
  if (a.masks.empty()) {
    masks.emplace_back(frames.front().width(), frames.front().height(), 1.0f);
  } else {
    for (const auto& p : numbered(ctx.path(a.masks), {".pgm", ".pam"})) {
      masks.push_back(io::mask_from_ldr(io::read_ldr(io::read_file(p))));
    }
  }
  const metrics::FlickerReport r = metrics::flicker_score(frames, masks);
  std::cout << metrics::to_key_value(r);
  if (!a.csv.empty()) write_text(ctx.path(a.csv), metrics::to_csv(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HDR environment relighting tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  std::string root;
  std::string config;
  app.add_option("--root", root, "Directory every path argument is resolved against")->required();
  app.add_option("--config", config, "key = value configuration file (relative to --root)");
  app.add_option("--threads", ctx.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);

  CodecArgs quant, dequant;
  auto* q = app.add_subcommand("quantize", "Linear HDR (.hdr/.pfm) to 8-bit PQ codes (.ppm)");
  q->add_option("--in", quant.in)->required();
  q->add_option("--out", quant.out)->required();
  auto* dq = app.add_subcommand("dequantize", "8-bit PQ codes (.ppm) to linear HDR (.hdr/.pfm)");
  dq->add_option("--in", dequant.in)->required();
  dq->add_option("--out", dequant.out)->required();

  auto add_light = [](CLI::App* sub, IrradianceArgs& a) {
    sub->add_option("--env", a.env, "Equirectangular environment (.hdr/.pfm)")->required();
    sub->add_option("--out", a.out, "Output directory")->required();
    sub->add_option("--yaw", a.yaw, "Yaw in degrees");
    sub->add_option("--face-size", a.face_size, "Irradiance cubemap face size")->check(CLI::Range(4, 1024));
    sub->add_option("--source-height", a.source_height, "Downsampled environment height")->check(CLI::PositiveNumber);
  };
  IrradianceArgs irr;
  auto* irr_cmd = app.add_subcommand("irradiance", "Prefilter an environment into a diffuse irradiance cubemap");
  add_light(irr_cmd, irr);

  SphereArgs sph;
  auto* sph_cmd = app.add_subcommand("spheres", "Render diffuse and mirror reference spheres");
  add_light(sph_cmd, sph.light);
  sph_cmd->add_option("--size", sph.size, "Image side in pixels")->check(CLI::PositiveNumber);
  sph_cmd->add_option("--radius", sph.radius, "Sphere radius relative to the image side");

  PerspArgs persp;
  auto* persp_cmd = app.add_subcommand("persp-extract", "Extract perspective views from an environment");
  persp_cmd->add_option("--env", persp.env)->required();
  persp_cmd->add_option("--out", persp.out, "Output image, or a directory with --augment")->required();
  persp_cmd->add_option("--yaw", persp.view.yaw_deg);
  persp_cmd->add_option("--pitch", persp.view.pitch_deg);
  persp_cmd->add_option("--roll", persp.view.roll_deg);
  persp_cmd->add_option("--fov", persp.view.fov_h_deg, "Horizontal field of view in degrees");
  persp_cmd->add_option("--width", persp.view.width)->check(CLI::PositiveNumber);
  persp_cmd->add_option("--height", persp.view.height)->check(CLI::PositiveNumber);
  persp_cmd->add_option("--augment", persp.augment, "Write this many randomized views")->check(CLI::NonNegativeNumber);
  persp_cmd->add_option("--seed", persp.seed);

  auto add_pipeline_flags = [](CLI::App* sub, ConfigFlags& f, bool with_inputs) {
    if (with_inputs) {
      f.add(sub, "--env", "environment", "Equirectangular environment (.hdr/.pfm)");
      f.add(sub, "--frames", "frames", "Directory of numbered capture frames");
      f.add(sub, "--masks", "masks", "Directory of numbered masks");
      f.add(sub, "--normals", "normals", "Directory of numbered normal maps");
      f.add(sub, "--output", "output", "Output directory");
      f.add(sub, "--env-yaw", "environment_yaw", "Environment yaw in degrees");
      f.add(sub, "--synthetic-frames", "synthetic_frames", "Use this many analytic sphere frames");
    }
    f.add(sub, "--camera-yaw", "camera_yaw", "Camera yaw in degrees");
    f.add(sub, "--face-size", "face_size", "Irradiance cubemap face size");
    f.add(sub, "--source-height", "source_height", "Downsampled environment height");
    f.add(sub, "--width", "width", "Frame width");
    f.add(sub, "--height", "height", "Frame height");
    f.add(sub, "--s1", "s1", "Capture weight");
    f.add(sub, "--s2", "s2", "Added light weight");
    f.add(sub, "--exposure", "exposure", "mean, none, or a fixed gain");
    f.add(sub, "--background-exposure", "background_exposure", "Background exposure");
    f.add(sub, "--background-fov", "background_fov", "Background horizontal fov in degrees");
    f.add(sub, "--temporal", "temporal", "on or off");
    f.add(sub, "--renormalize", "renormalize", "on or off");
    f.add(sub, "--synthetic-jitter", "synthetic_jitter", "Normal jitter stddev for analytic frames");
    f.add(sub, "--seed", "seed", "Random seed");
  };
  ConfigFlags relight_flags;
  auto* relight_cmd = app.add_subcommand("relight", "Relight a frame sequence under an environment");
  add_pipeline_flags(relight_cmd, relight_flags, true);

  ConfigFlags bench_flags;
  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Per-stage timing on analytic frames for several environment widths");
  add_pipeline_flags(bench_cmd, bench_flags, false);
  bench_cmd->add_option("--env-widths", bench.env_widths, "Environment widths")->delimiter(',');
  bench_cmd->add_option("--frames", bench.frames, "Frames per run");
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per width");
  bench_cmd->add_option("--csv", bench.csv, "Write per-stage timings as CSV");

  FlickerArgs flick;
  auto* flick_cmd = app.add_subcommand("flicker", "Inter-frame flicker of a rendered sequence");
  flick_cmd->add_option("--frames", flick.frames, "Directory of numbered frames")->required();
  flick_cmd->add_option("--masks", flick.masks, "Directory of numbered masks");
  flick_cmd->add_option("--csv", flick.csv, "Write per-step scores as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", kExitUsage, e.what());
  }

  try {
    ctx.root = root;
    ctx.config = config;
    if (!fs::is_directory(ctx.root)) throw Error(ErrorCode::kIo, "root is not a directory: " + root);
    if (*q) run_quantize(ctx, quant);
    else if (*dq) run_dequantize(ctx, dequant);
    else if (*irr_cmd) run_irradiance(ctx, irr);
    else if (*sph_cmd) run_spheres(ctx, sph);
    else if (*persp_cmd) run_persp(ctx, persp);
    else if (*relight_cmd) run_relight_cmd(ctx, relight_flags);
    else if (*bench_cmd) run_bench(ctx, bench_flags, bench);
    else if (*flick_cmd) run_flicker(ctx, flick);
  } catch (const UsageError& e) {
    return report("usage", kExitUsage, e.what());
  } catch (const ParseError& e) {
    return report(to_string(e.code()), exit_code_for(e.code()), e.what(), e.offset());
  } catch (const Error& e) {
    return report(to_string(e.code()), exit_code_for(e.code()), e.what());
  } catch (const fs::filesystem_error& e) {
    return report("io", kExitIo, e.what());
  } catch (const std::exception& e) {
    return report("internal", kExitFailure, e.what());
  }
  return 0;
}
