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

#include "hdrelight/temporal.hpp"

#include <cmath>

namespace hdrelight::temporal {
namespace {

constexpr double kUnitTolerance = 1e-6;

}  // namespace

NormalMap NormalHistory::push_and_filter(const NormalMap& n_t) {
  if (!window_.empty() && (window_.front().width() != n_t.width() || window_.front().height() != n_t.height())) {
    throw Error(ErrorCode::kShapeMismatch, "normal map size differs from the buffered history");
  }
  window_.push_back(n_t);
  if (window_.size() > kWindow) window_.pop_front();
  ++frames_seen_;

  const int w = n_t.width();
  const int h = n_t.height();
  NormalMap out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Oldest to newest, so the summation order is fixed.
      double sx = 0.0, sy = 0.0, sz = 0.0;
      int count = 0;
      for (const NormalMap& m : window_) {
        if (!m.is_valid(x, y)) continue;
        const Vec3f& v = m.normals.at(x, y);
        sx += v.x;
        sy += v.y;
        sz += v.z;
        ++count;
      }
      if (count == 0) continue;
      const Vec3 mean{sx / count, sy / count, sz / count};
      const double len = length(mean);
      if (!(len >= options_.min_norm)) continue;
      // Means already unit to float precision are kept as is.
      const bool rescale = options_.renormalize && std::abs(len - 1.0) > kUnitTolerance;
      const Vec3 v = rescale ? mean * (1.0 / len) : mean;
      out.set(x, y, {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)});
    }
  }
  return out;
}

void NormalHistory::reset() {
  window_.clear();
  frames_seen_ = 0;
}

}  // namespace hdrelight::temporal
