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

#ifndef HDRELIGHT_SYNTHETIC_HPP
#define HDRELIGHT_SYNTHETIC_HPP

#include <cstdint>

#include "hdrelight/envmap.hpp"
#include "hdrelight/images.hpp"

// Analytic inputs for tests, benchmarks and the analytic-sphere provider.
namespace hdrelight::synthetic {

envmap::EquirectEnv constant_environment(int width, Rgb value, double rotation_deg = 0.0);

/// Radiance `value` for directions with y > 0, zero below.
envmap::EquirectEnv upper_hemisphere_environment(int width, Rgb value = {1.0f, 1.0f, 1.0f});

/// Smooth sky: vertical gradient plus a broad warm lobe around `sun`.
envmap::EquirectEnv sky_environment(int width, const Vec3& sun = {0.6, 0.5, 0.62});

/// Unit-disk sphere normals centred in the frame. Pixels outside the disk are invalid.
NormalMap sphere_normals(int width, int height, double radius_fraction = 0.4);

/// Adds i.i.d. Gaussian noise (per component, stddev sigma) to every valid
/// normal and renormalizes. Deterministic in (seed, stream).
NormalMap jitter_normals(const NormalMap& normals, double sigma, std::uint64_t seed, std::uint64_t stream);

/// 1 where the normal map is valid, 0 elsewhere.
AlphaMask mask_from_normals(const NormalMap& normals);

}  // namespace hdrelight::synthetic

#endif  // HDRELIGHT_SYNTHETIC_HPP
