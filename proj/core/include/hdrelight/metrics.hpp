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

#ifndef HDRELIGHT_METRICS_HPP
#define HDRELIGHT_METRICS_HPP

#include <span>
#include <string>
#include <vector>

#include "hdrelight/images.hpp"

namespace hdrelight::metrics {

/// Mean absolute inter-frame difference inside the mask, a proxy for
/// visible flicker rather than a perceptual measure.
struct FlickerReport {
  std::vector<double> per_step;  /// entry k compares frame k + 1 with frame k
  double mean = 0.0;
  double max = 0.0;
};

/// Pixels count when both frames' masks are >= 0.5. Pass one mask to share it
/// across all frames, or one per frame. Throws kInvalidInput for fewer than
/// two frames and kShapeMismatch for misaligned inputs.
FlickerReport flicker_score(std::span<const HdrImage> frames, std::span<const AlphaMask> masks);

struct ImageStats {
  double max_abs_diff = 0.0;
  double rms = 0.0;
  /// Peak 1.0; +infinity for identical images.
  double psnr = 0.0;
};

ImageStats image_stats(const HdrImage& a, const HdrImage& b);

/// Codes scaled to [0, 1] per channel.
HdrImage ldr_to_unit(const LdrImage& img);

std::string to_key_value(const FlickerReport& r);
std::string to_csv(const FlickerReport& r);
std::string to_key_value(const ImageStats& s);

}  // namespace hdrelight::metrics

#endif  // HDRELIGHT_METRICS_HPP
