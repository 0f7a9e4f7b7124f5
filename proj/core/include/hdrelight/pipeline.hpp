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

#ifndef HDRELIGHT_PIPELINE_HPP
#define HDRELIGHT_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hdrelight/envmap.hpp"
#include "hdrelight/hdr_io.hpp"
#include "hdrelight/images.hpp"
#include "hdrelight/relight.hpp"

namespace hdrelight::pipeline {

enum class ExposureMode {
  kMeanIrradiance,  // D divided by the mean irradiance luminance
  kFixed,           // D multiplied by exposure_gain
  kNone,
};

/// Declarative description of one relighting run. Paths are resolved
/// against `root`.
struct PipelineConfig {
  std::filesystem::path root = ".";
  std::filesystem::path environment;
  double environment_yaw_deg = 0.0;
  double camera_yaw_deg = 0.0;
  std::filesystem::path frames_dir;
  std::filesystem::path masks_dir;
  std::filesystem::path normals_dir;
  std::filesystem::path output_dir;

  int face_size = 32;
  int source_height = 64;
  int width = 1024;
  int height = 768;

  relight::ShadingParams shading;
  ExposureMode exposure_mode = ExposureMode::kMeanIrradiance;
  double exposure_gain = 1.0;
  double background_exposure = 1.0;
  double background_fov_deg = 60.0;

  bool temporal_filter = true;
  bool renormalize = true;

  /// When > 0 the analytic-sphere provider replaces the file inputs.
  int synthetic_frames = 0;
  double synthetic_jitter = 0.0;
  std::uint64_t seed = 0;

  int threads = 0;
};

/// Line-oriented `key = value` text; `#` starts a comment. Keys mirror the
/// CLI flags (see docs/config.md). Unknown keys throw kConfig.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base = {});
/// Serializes every field in parse_config's format.
std::string format_config(const PipelineConfig& config);
/// Throws kConfig for non-positive sizes or negative constants.
void validate(const PipelineConfig& config);

std::filesystem::path resolve(const PipelineConfig& config, const std::filesystem::path& p);

struct FrameInputs {
  LdrImage capture;
  AlphaMask mask;
  NormalMap normals;
};

/// Source of aligned capture / mask / normal triples, standing in for
/// upstream segmentation and normal estimation.
class FrameProvider {
 public:
  virtual ~FrameProvider() = default;
  virtual std::size_t frame_count() const = 0;
  virtual FrameInputs load(std::size_t index) = 0;
};

/// Reads zero-padded numbered files (00000.ppm, 00000.pgm, 00000.pfm, ...)
/// from three directories. The constructor checks that indices run 0..n-1 in
/// every directory and throws kMissingFrame naming the first bad index.
class FileFrameProvider : public FrameProvider {
 public:
  FileFrameProvider(std::filesystem::path frames_dir, std::filesystem::path masks_dir,
                    std::filesystem::path normals_dir);

  std::size_t frame_count() const override { return frames_.size(); }
  FrameInputs load(std::size_t index) override;

 private:
  std::vector<std::filesystem::path> frames_;
  std::vector<std::filesystem::path> masks_;
  std::vector<std::filesystem::path> normals_;
};

/// Analytic sphere under a constant-colour capture, with optional per-frame
/// Gaussian normal jitter.
class SphereFrameProvider : public FrameProvider {
 public:
  SphereFrameProvider(int width, int height, std::size_t frames, double jitter = 0.0, std::uint64_t seed = 0);

  std::size_t frame_count() const override { return frames_; }
  FrameInputs load(std::size_t index) override;

 private:
  int width_;
  int height_;
  std::size_t frames_;
  double jitter_;
  std::uint64_t seed_;
  NormalMap base_;
};

/// Zero-padded file name for frame `index`, e.g. 00012.ppm.
std::string frame_file_name(std::size_t index, std::string_view extension);

struct StageStats {
  std::string name;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
};

struct TimingReport {
  std::vector<StageStats> stages;  /// ingest, light_map, shading, composite, encode
  double precompute_ms = 0.0;
  double loop_ms = 0.0;
  std::size_t frames = 0;
  double fps = 0.0;
  int environment_width = 0;
  int environment_height = 0;
  int face_size = 0;
  /// Environment-sized passes observed inside the frame loop; always 0.
  std::uint64_t environment_passes_in_loop = 0;

  const StageStats& stage(std::string_view name) const;
};

std::string to_text(const TimingReport& report);
std::string to_csv(const TimingReport& report);

/// Per-stage samples (milliseconds) gathered across frames and runs.
class TimingAccumulator {
 public:
  void add(std::string_view stage, double ms);
  void add_precompute(double ms);
  void add_loop(double ms, std::size_t frames);
  TimingReport report(int env_width, int env_height, int face_size, std::uint64_t passes_in_loop) const;

 private:
  std::vector<std::pair<std::string, std::vector<double>>> samples_;
  std::vector<double> precompute_;
  double loop_ms_ = 0.0;
  std::size_t frames_ = 0;
};

struct FrameOutput {
  std::size_t index;
  const relight::RelitFrame& relit;
  const AlphaMask& mask;
  const LdrImage& composited;
  const io::Bytes& encoded;
};

using FrameSink = std::function<void(const FrameOutput&)>;

/// Prefilters the environment once, then per frame: temporal filter ->
/// diffuse light map -> shading -> composite -> encode.
TimingReport run_relight(const PipelineConfig& config, const envmap::EquirectEnv& env, FrameProvider& provider,
                         const FrameSink& sink, TimingAccumulator* accumulate = nullptr);

envmap::EquirectEnv load_environment(const std::filesystem::path& path, double yaw_deg);

/// Resolves inputs from the config, writes NNNNN.ppm frames plus
/// timing.txt / timing.csv into the output directory.
TimingReport run_relight(const PipelineConfig& config);

}  // namespace hdrelight::pipeline

#endif  // HDRELIGHT_PIPELINE_HPP
