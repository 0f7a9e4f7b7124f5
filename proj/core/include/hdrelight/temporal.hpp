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

#ifndef HDRELIGHT_TEMPORAL_HPP
#define HDRELIGHT_TEMPORAL_HPP

#include <cstdint>
#include <deque>

#include "hdrelight/images.hpp"

namespace hdrelight::temporal {

struct FilterOptions {
  /// Rescale each averaged normal to unit length before it is used for
  /// cubemap lookups. Means within 1e-6 of unit length are left unchanged.
  bool renormalize = true;
  /// Averaged vectors shorter than this are marked invalid.
  double min_norm = 1e-4;
};

/// Causal average over the three most recent normal maps of one stream.
/// During warm-up the mean covers however many maps have been pushed.
/// Not thread-safe; use one instance per stream.
class NormalHistory {
 public:
  static constexpr std::size_t kWindow = 3;

  explicit NormalHistory(FilterOptions options = {}) : options_(options) {}

  /// Appends n_t and returns the filtered map for frame t. Throws
  /// kShapeMismatch if n_t differs in size from the buffered maps.
  NormalMap push_and_filter(const NormalMap& n_t);

  void reset();

  std::size_t size() const noexcept { return window_.size(); }
  std::uint64_t frames_seen() const noexcept { return frames_seen_; }
  const FilterOptions& options() const noexcept { return options_; }

 private:
  FilterOptions options_;
  std::deque<NormalMap> window_;
  std::uint64_t frames_seen_ = 0;
};

}  // namespace hdrelight::temporal

#endif  // HDRELIGHT_TEMPORAL_HPP
