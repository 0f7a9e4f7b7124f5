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

#include "hdrelight/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "hdrelight/irradiance.hpp"
#include "hdrelight/synthetic.hpp"
#include "hdrelight/temporal.hpp"

namespace hdrelight::pipeline {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::array<std::string_view, 5> kStages = {"ingest", "light_map", "shading", "composite", "encode"};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(int line, const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kConfig, "line " + std::to_string(line) + ": bad value '" + value + "' for " + key);
}

int to_int(int line, const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(line, key, v);
  return out;
}

std::uint64_t to_u64(int line, const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(line, key, v);
  return out;
}

double to_double(int line, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(out)) bad_value(line, key, v);
  return out;
}

bool to_bool(int line, const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  bad_value(line, key, v);
}

// Digit-only file stems in a directory, keyed by index.
std::map<std::size_t, fs::path> numbered_files(const fs::path& dir, std::initializer_list<std::string_view> exts) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  std::map<std::size_t, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string stem = entry.path().stem().string();
    const std::string ext = entry.path().extension().string();
    if (stem.empty() || !std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    if (std::find(exts.begin(), exts.end(), ext) == exts.end()) continue;
    const std::size_t index = std::stoul(stem);
    if (out.contains(index)) throw Error(ErrorCode::kMissingFrame, "duplicate frame index " + std::to_string(index) + " in " + dir.string());
    out.emplace(index, entry.path());
  }
  return out;
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

}  // namespace

PipelineConfig parse_config(std::string_view text, PipelineConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string v = trim(std::string_view(line).substr(eq + 1));
    const int n = line_no;

    if (key == "root") cfg.root = v;
    else if (key == "environment" || key == "env") cfg.environment = v;
    else if (key == "environment_yaw" || key == "env_yaw") cfg.environment_yaw_deg = to_double(n, key, v);
    else if (key == "camera_yaw") cfg.camera_yaw_deg = to_double(n, key, v);
    else if (key == "frames") cfg.frames_dir = v;
    else if (key == "masks") cfg.masks_dir = v;
    else if (key == "normals") cfg.normals_dir = v;
    else if (key == "output") cfg.output_dir = v;
    else if (key == "face_size") cfg.face_size = to_int(n, key, v);
    else if (key == "source_height") cfg.source_height = to_int(n, key, v);
    else if (key == "width") cfg.width = to_int(n, key, v);
    else if (key == "height") cfg.height = to_int(n, key, v);
    else if (key == "s1") cfg.shading.s1 = to_double(n, key, v);
    else if (key == "s2") cfg.shading.s2 = to_double(n, key, v);
    else if (key == "exposure") {
      if (v == "mean") {
        cfg.exposure_mode = ExposureMode::kMeanIrradiance;
      } else if (v == "none") {
        cfg.exposure_mode = ExposureMode::kNone;
      } else {
        cfg.exposure_mode = ExposureMode::kFixed;
        cfg.exposure_gain = to_double(n, key, v);
      }
    } else if (key == "background_exposure") cfg.background_exposure = to_double(n, key, v);
    else if (key == "background_fov") cfg.background_fov_deg = to_double(n, key, v);
    else if (key == "temporal") cfg.temporal_filter = to_bool(n, key, v);
    else if (key == "renormalize") cfg.renormalize = to_bool(n, key, v);
    else if (key == "synthetic_frames") cfg.synthetic_frames = to_int(n, key, v);
    else if (key == "synthetic_jitter") cfg.synthetic_jitter = to_double(n, key, v);
    else if (key == "seed") cfg.seed = to_u64(n, key, v);
    else if (key == "threads") cfg.threads = to_int(n, key, v);
    else throw Error(ErrorCode::kConfig, "line " + std::to_string(n) + ": unknown key '" + key + "'");
  }
  return cfg;
}

PipelineConfig load_config_file(const fs::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const PipelineConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "root = " << c.root.string() << "\n";
  os << "environment = " << c.environment.string() << "\n";
  os << "environment_yaw = " << c.environment_yaw_deg << "\n";
  os << "camera_yaw = " << c.camera_yaw_deg << "\n";
  os << "frames = " << c.frames_dir.string() << "\n";
  os << "masks = " << c.masks_dir.string() << "\n";
  os << "normals = " << c.normals_dir.string() << "\n";
  os << "output = " << c.output_dir.string() << "\n";
  os << "face_size = " << c.face_size << "\n";
  os << "source_height = " << c.source_height << "\n";
  os << "width = " << c.width << "\n";
  os << "height = " << c.height << "\n";
  os << "s1 = " << c.shading.s1 << "\n";
  os << "s2 = " << c.shading.s2 << "\n";
  switch (c.exposure_mode) {
    case ExposureMode::kMeanIrradiance:
      os << "exposure = mean\n";
      break;
    case ExposureMode::kNone:
      os << "exposure = none\n";
      break;
    case ExposureMode::kFixed:
      os << "exposure = " << c.exposure_gain << "\n";
      break;
  }
  os << "background_exposure = " << c.background_exposure << "\n";
  os << "background_fov = " << c.background_fov_deg << "\n";
  os << "temporal = " << (c.temporal_filter ? "on" : "off") << "\n";
  os << "renormalize = " << (c.renormalize ? "on" : "off") << "\n";
  os << "synthetic_frames = " << c.synthetic_frames << "\n";
  os << "synthetic_jitter = " << c.synthetic_jitter << "\n";
  os << "seed = " << c.seed << "\n";
  os << "threads = " << c.threads << "\n";
  return os.str();
}

void validate(const PipelineConfig& c) {
  if (c.width < 1 || c.height < 1) throw Error(ErrorCode::kConfig, "output resolution must be positive");
  if (c.face_size < 4) throw Error(ErrorCode::kConfig, "face_size must be >= 4");
  if (c.source_height < 1) throw Error(ErrorCode::kConfig, "source_height must be >= 1");
  if (c.shading.s1 < 0.0 || c.shading.s2 < 0.0) throw Error(ErrorCode::kConfig, "shading constants must be >= 0");
  if (c.exposure_mode == ExposureMode::kFixed && !(c.exposure_gain >= 0.0)) {
    throw Error(ErrorCode::kConfig, "exposure gain must be >= 0");
  }
  if (!(c.background_exposure >= 0.0)) throw Error(ErrorCode::kConfig, "background_exposure must be >= 0");
  if (c.synthetic_frames < 0) throw Error(ErrorCode::kConfig, "synthetic_frames must be >= 0");
  if (c.synthetic_jitter < 0.0) throw Error(ErrorCode::kConfig, "synthetic_jitter must be >= 0");
  relight::validate(c.shading);
}

fs::path resolve(const PipelineConfig& config, const fs::path& p) {
  if (p.empty() || p.is_absolute()) return p;
  return config.root / p;
}

std::string frame_file_name(std::size_t index, std::string_view extension) {
  std::ostringstream os;
  os << std::setw(5) << std::setfill('0') << index << extension;
  return os.str();
}

// --- Providers ---------------------------------------------------------------

FileFrameProvider::FileFrameProvider(fs::path frames_dir, fs::path masks_dir, fs::path normals_dir) {
  const auto frames = numbered_files(frames_dir, {".ppm", ".pam"});
  const auto masks = numbered_files(masks_dir, {".pgm", ".pam"});
  const auto normals = numbered_files(normals_dir, {".pfm", ".ppm"});
  if (frames.empty()) throw Error(ErrorCode::kMissingFrame, "no frames found in " + frames_dir.string());

  std::size_t expected = 0;
  for (const auto& [index, path] : frames) {
    if (index != expected) {
      throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(expected) + " missing in " + frames_dir.string());
    }
    if (!masks.contains(index)) {
      throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(index) + " missing in " + masks_dir.string());
    }
    if (!normals.contains(index)) {
      throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(index) + " missing in " + normals_dir.string());
    }
    frames_.push_back(path);
    masks_.push_back(masks.at(index));
    normals_.push_back(normals.at(index));
    ++expected;
  }
  if (masks.size() != frames.size() || normals.size() != frames.size()) {
    throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(expected) + " has a mask or normal map but no frame");
  }
}

FrameInputs FileFrameProvider::load(std::size_t index) {
  if (index >= frames_.size()) throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(index) + " out of range");
  FrameInputs in;
  in.capture = io::read_ldr(io::read_file(frames_[index]));
  in.mask = io::mask_from_ldr(io::read_ldr(io::read_file(masks_[index])));
  in.normals = io::read_normal_map(io::read_file(normals_[index]));
  if (in.capture.width != in.mask.width() || in.capture.height != in.mask.height() ||
      in.capture.width != in.normals.width() || in.capture.height != in.normals.height()) {
    throw Error(ErrorCode::kShapeMismatch, "frame index " + std::to_string(index) + ": frame, mask and normals differ in size");
  }
  return in;
}

SphereFrameProvider::SphereFrameProvider(int width, int height, std::size_t frames, double jitter, std::uint64_t seed)
    : width_(width),
      height_(height),
      frames_(frames),
      jitter_(jitter),
      seed_(seed),
      base_(synthetic::sphere_normals(width, height)) {}

FrameInputs SphereFrameProvider::load(std::size_t index) {
  if (index >= frames_) throw Error(ErrorCode::kMissingFrame, "frame index " + std::to_string(index) + " out of range");
  FrameInputs in;
  in.normals = jitter_ > 0.0 ? synthetic::jitter_normals(base_, jitter_, seed_, index) : base_;
  in.mask = synthetic::mask_from_normals(base_);
  in.capture = LdrImage(width_, height_, 3);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const bool fg = base_.is_valid(x, y);
      in.capture.at(x, y, 0) = fg ? 196 : 40;
      in.capture.at(x, y, 1) = fg ? 160 : 48;
      in.capture.at(x, y, 2) = fg ? 140 : 56;
    }
  }
  return in;
}

// --- Timing ------------------------------------------------------------------

const StageStats& TimingReport::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kInvalidInput, "no timing stage " + std::string(name));
}

void TimingAccumulator::add(std::string_view stage, double ms) {
  for (auto& [name, v] : samples_) {
    if (name == stage) {
      v.push_back(ms);
      return;
    }
  }
  samples_.emplace_back(std::string(stage), std::vector<double>{ms});
}

void TimingAccumulator::add_precompute(double ms) { precompute_.push_back(ms); }

void TimingAccumulator::add_loop(double ms, std::size_t frames) {
  loop_ms_ += ms;
  frames_ += frames;
}

TimingReport TimingAccumulator::report(int env_width, int env_height, int face_size, std::uint64_t passes) const {
  TimingReport r;
  for (std::string_view name : kStages) {
    StageStats s{std::string(name)};
    for (const auto& [n, v] : samples_) {
      if (n != name || v.empty()) continue;
      double sum = 0.0;
      for (double x : v) sum += x;
      s.mean_ms = sum / static_cast<double>(v.size());
      s.p50_ms = percentile(v, 0.50);
      s.p95_ms = percentile(v, 0.95);
    }
    r.stages.push_back(s);
  }
  double pre = 0.0;
  for (double x : precompute_) pre += x;
  r.precompute_ms = precompute_.empty() ? 0.0 : pre / static_cast<double>(precompute_.size());
  r.loop_ms = loop_ms_;
  r.frames = frames_;
  r.fps = loop_ms_ > 0.0 ? static_cast<double>(frames_) / (loop_ms_ / 1000.0) : 0.0;
  r.environment_width = env_width;
  r.environment_height = env_height;
  r.face_size = face_size;
  r.environment_passes_in_loop = passes;
  return r;
}

std::string to_text(const TimingReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "frames=" << r.frames << "\n";
  os << "fps=" << r.fps << "\n";
  os << "loop_ms=" << r.loop_ms << "\n";
  os << "precompute_ms=" << r.precompute_ms << "\n";
  os << "environment=" << r.environment_width << "x" << r.environment_height << "\n";
  os << "face_size=" << r.face_size << "\n";
  os << "environment_passes_in_loop=" << r.environment_passes_in_loop << "\n";
  for (const auto& s : r.stages) {
    os << "stage." << s.name << ".mean_ms=" << s.mean_ms << "\n";
    os << "stage." << s.name << ".p50_ms=" << s.p50_ms << "\n";
    os << "stage." << s.name << ".p95_ms=" << s.p95_ms << "\n";
  }
  return os.str();
}

std::string to_csv(const TimingReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "stage,mean_ms,p50_ms,p95_ms\n";
  for (const auto& s : r.stages) os << s.name << "," << s.mean_ms << "," << s.p50_ms << "," << s.p95_ms << "\n";
  os << "precompute," << r.precompute_ms << "," << r.precompute_ms << "," << r.precompute_ms << "\n";
  return os.str();
}

// --- Run -----------------------------------------------------------------------

TimingReport run_relight(const PipelineConfig& config, const envmap::EquirectEnv& env, FrameProvider& provider,
                         const FrameSink& sink, TimingAccumulator* accumulate) {
  validate(config);
  const std::size_t count = provider.frame_count();
  if (count == 0) throw Error(ErrorCode::kMissingFrame, "no frames to relight");

  TimingAccumulator local;
  TimingAccumulator& acc = accumulate ? *accumulate : local;

  const auto pre_start = Clock::now();
  irradiance::PrefilterOptions opts;
  opts.face_size = config.face_size;
  opts.source_height = config.source_height;
  opts.threads = config.threads;
  const irradiance::IrradianceCubemap irr = irradiance::prefilter_diffuse(env, opts);
  double gain = 1.0;
  if (config.exposure_mode == ExposureMode::kMeanIrradiance) {
    const double mean = irradiance::mean_irradiance(irr);
    gain = mean > 0.0 ? 1.0 / mean : 1.0;
  } else if (config.exposure_mode == ExposureMode::kFixed) {
    gain = config.exposure_gain;
  }
  const LdrImage background =
      relight::render_camera_background(env, config.camera_yaw_deg, config.background_fov_deg, config.width,
                                        config.height, config.background_exposure, config.threads);
  acc.add_precompute(elapsed_ms(pre_start));

  temporal::NormalHistory history({config.renormalize});
  const std::uint64_t passes_before = envmap::environment_pass_count();
  double loop_ms = 0.0;

  for (std::size_t i = 0; i < count; ++i) {
    auto t = Clock::now();
    FrameInputs in = provider.load(i);
    if (in.capture.width != config.width || in.capture.height != config.height ||
        in.mask.width() != config.width || in.mask.height() != config.height ||
        in.normals.width() != config.width || in.normals.height() != config.height) {
      throw Error(ErrorCode::kShapeMismatch, "frame index " + std::to_string(i) + " does not match the output resolution " +
                                                 std::to_string(config.width) + "x" + std::to_string(config.height));
    }
    double ms = elapsed_ms(t);
    acc.add("ingest", ms);
    loop_ms += ms;

    t = Clock::now();
    const NormalMap filtered = config.temporal_filter ? history.push_and_filter(in.normals) : std::move(in.normals);
    const irradiance::DiffuseLightMap light =
        irradiance::diffuse_light_map(irr, filtered, config.camera_yaw_deg, config.threads);
    ms = elapsed_ms(t);
    acc.add("light_map", ms);
    loop_ms += ms;

    t = Clock::now();
    const relight::LinearImage linear = relight::linearize(in.capture);
    const relight::LinearImage low_sat = relight::low_saturation(linear, config.shading);
    const relight::RelitFrame relit = relight::shade(linear, low_sat, light, config.shading, gain, config.threads);
    ms = elapsed_ms(t);
    acc.add("shading", ms);
    loop_ms += ms;

    t = Clock::now();
    const LdrImage out = relight::composite(relit, in.mask, background);
    ms = elapsed_ms(t);
    acc.add("composite", ms);
    loop_ms += ms;

    t = Clock::now();
    const io::Bytes encoded = io::write_ldr(out);
    ms = elapsed_ms(t);
    acc.add("encode", ms);
    loop_ms += ms;

    if (sink) sink(FrameOutput{i, relit, in.mask, out, encoded});
  }
  const std::uint64_t passes = envmap::environment_pass_count() - passes_before;
  acc.add_loop(loop_ms, count);
  return acc.report(env.width(), env.height(), config.face_size, passes);
}

envmap::EquirectEnv load_environment(const fs::path& path, double yaw_deg) {
  const io::Bytes bytes = io::read_file(path);
  HdrImage img = path.extension() == ".pfm" ? io::read_pfm(bytes) : io::read_radiance_hdr(bytes);
  return envmap::EquirectEnv(std::move(img), yaw_deg);
}

TimingReport run_relight(const PipelineConfig& config) {
  validate(config);
  if (config.environment.empty()) throw Error(ErrorCode::kConfig, "environment path is required");
  if (config.output_dir.empty()) throw Error(ErrorCode::kConfig, "output directory is required");
  const envmap::EquirectEnv env = load_environment(resolve(config, config.environment), config.environment_yaw_deg);

  std::unique_ptr<FrameProvider> provider;
  if (config.synthetic_frames > 0) {
    provider = std::make_unique<SphereFrameProvider>(config.width, config.height,
                                                     static_cast<std::size_t>(config.synthetic_frames),
                                                     config.synthetic_jitter, config.seed);
  } else {
    provider = std::make_unique<FileFrameProvider>(resolve(config, config.frames_dir), resolve(config, config.masks_dir),
                                                   resolve(config, config.normals_dir));
  }

  const fs::path out_dir = resolve(config, config.output_dir);
  fs::create_directories(out_dir);
  const TimingReport report = run_relight(config, env, *provider, [&](const FrameOutput& f) {
    io::write_file(out_dir / frame_file_name(f.index, ".ppm"), f.encoded);
  });
  const std::string text = to_text(report);
  const std::string csv = to_csv(report);
  io::write_file(out_dir / "timing.txt", io::ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  io::write_file(out_dir / "timing.csv", io::ByteView(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  return report;
}

}  // namespace hdrelight::pipeline
