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

#include <benchmark/benchmark.h>

#include <random>

#include "hdrelight/hdr_io.hpp"
#include "hdrelight/irradiance.hpp"
#include "hdrelight/pipeline.hpp"
#include "hdrelight/pq_codec.hpp"
#include "hdrelight/relight.hpp"
#include "hdrelight/synthetic.hpp"
#include "hdrelight/temporal.hpp"

namespace {

using namespace hdrelight;

HdrImage random_hdr(int w, int h) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<float> u(0.0f, 20000.0f);
  HdrImage img(w, h);
  for (auto& p : img.data()) p = {u(rng), u(rng), u(rng)};
  return img;
}

void BM_PqQuantize(benchmark::State& state) {
  const HdrImage img = random_hdr(512, 256);
  for (auto _ : state) benchmark::DoNotOptimize(pq::quantize_hdr(img, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_PqQuantize);

void BM_RadianceDecode(benchmark::State& state) {
  const io::Bytes bytes = io::write_radiance_hdr(random_hdr(1024, 512));
  for (auto _ : state) benchmark::DoNotOptimize(io::read_radiance_hdr(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_RadianceDecode);

void BM_Prefilter(benchmark::State& state) {
  const auto env = synthetic::sky_environment(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(irradiance::prefilter_diffuse(env, {32, 64, 0}));
  }
}
BENCHMARK(BM_Prefilter)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

// Per-frame light map lookup; the environment width only affects the
// precompute, so both arguments should time alike.
void BM_DiffuseLightMap(benchmark::State& state) {
  const auto irr = irradiance::prefilter_diffuse(synthetic::sky_environment(static_cast<int>(state.range(0))), {32, 64, 0});
  const NormalMap normals = synthetic::sphere_normals(512, 384);
  for (auto _ : state) benchmark::DoNotOptimize(irradiance::diffuse_light_map(irr, normals, 0.0, 1));
}
BENCHMARK(BM_DiffuseLightMap)->Arg(512)->Arg(2048)->Unit(benchmark::kMicrosecond);

void BM_TemporalFilter(benchmark::State& state) {
  const NormalMap base = synthetic::sphere_normals(512, 384);
  temporal::NormalHistory h;
  for (auto _ : state) benchmark::DoNotOptimize(h.push_and_filter(base));
}
BENCHMARK(BM_TemporalFilter)->Unit(benchmark::kMicrosecond);

void BM_Shade(benchmark::State& state) {
  pipeline::SphereFrameProvider provider(512, 384, 1);
  const auto in = provider.load(0);
  const auto irr = irradiance::prefilter_diffuse(synthetic::sky_environment(256), {32, 64, 0});
  const auto light = irradiance::diffuse_light_map(irr, in.normals);
  const auto linear = relight::linearize(in.capture);
  const auto low_sat = relight::low_saturation(linear);
  for (auto _ : state) benchmark::DoNotOptimize(relight::shade(linear, low_sat, light, {}, 1.0, 1));
}
BENCHMARK(BM_Shade)->Unit(benchmark::kMicrosecond);

void BM_PipelineFrames(benchmark::State& state) {
  const auto env = synthetic::sky_environment(static_cast<int>(state.range(0)));
  pipeline::PipelineConfig cfg;
  cfg.width = 512;
  cfg.height = 384;
  for (auto _ : state) {
    pipeline::SphereFrameProvider provider(cfg.width, cfg.height, 16, 0.03, 2);
    const auto r = pipeline::run_relight(cfg, env, provider, nullptr);
    state.counters["per_frame_ms"] = r.loop_ms / static_cast<double>(r.frames);
    state.counters["precompute_ms"] = r.precompute_ms;
  }
}
BENCHMARK(BM_PipelineFrames)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
