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

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the code paths it is used to check.

#ifndef HDRELIGHT_TESTS_ORACLES_HPP
#define HDRELIGHT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>

namespace hdrelight::oracle {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Extended-precision PQ encode, evaluated directly from the closed form.
inline long double pq_encode_ld(long double luminance) {
  const long double m1 = 0.1593017578125L, m2 = 78.84375L, c1 = 0.8359375L, c2 = 18.8515625L, c3 = 18.6875L;
  const long double t = std::pow(luminance / 10000.0L, m1);
  return std::pow((c1 + c2 * t) / (1.0L + c3 * t), m2);
}

inline long double pq_decode_ld(long double e) {
  const long double m1 = 0.1593017578125L, m2 = 78.84375L, c1 = 0.8359375L, c2 = 18.8515625L, c3 = 18.6875L;
  const long double p = std::pow(e, 1.0L / m2);
  return 10000.0L * std::pow(std::max(p - c1, 0.0L) / (c2 - c3 * p), 1.0L / m1);
}

// Direction from equirect (u, v) written out independently of the library.
struct Dir {
  double x, y, z;
};

inline Dir uv_dir(double u, double v) {
  const double th = v * static_cast<double>(kPiL);
  const double ph = (u - 0.5) * 2.0 * static_cast<double>(kPiL);
  return {std::sin(th) * std::sin(ph), std::cos(th), std::sin(th) * std::cos(ph)};
}

// Monte-Carlo estimate of (1/pi) * integral of L(w) max(w.n, 0) dw using
// uniform sphere sampling.
inline double mc_irradiance(const std::function<double(const Dir&)>& radiance, const Dir& n, std::size_t samples,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = 2.0 * uni(rng) - 1.0;
    const double phi = 2.0 * static_cast<double>(kPiL) * uni(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Dir w{r * std::cos(phi), r * std::sin(phi), z};
    const double c = w.x * n.x + w.y * n.y + w.z * n.z;
    if (c > 0.0) sum += radiance(w) * c;
  }
  const double sphere = 4.0 * static_cast<double>(kPiL);
  return sum / static_cast<double>(samples) * sphere / static_cast<double>(kPiL);
}

// Analytic irradiance of a uniform unit upper hemisphere (y > 0) for normal n.
inline double hemisphere_irradiance(const Dir& n) { return 0.5 * (1.0 + n.y); }

// Grid search plus local refinement for the disk point (x, y) whose mirror
// reflection r = 2 (n.v) n - v, v = +Z, best matches target direction t.
inline std::pair<double, double> invert_mirror(const Dir& t) {
  auto err = [&](double x, double y) {
    const double rr = x * x + y * y;
    if (rr > 1.0) return std::numeric_limits<double>::infinity();
    const double z = std::sqrt(1.0 - rr);
    const Dir r{2.0 * z * x, 2.0 * z * y, 2.0 * z * z - 1.0};
    return (r.x - t.x) * (r.x - t.x) + (r.y - t.y) * (r.y - t.y) + (r.z - t.z) * (r.z - t.z);
  };
  double bx = 0.0, by = 0.0, best = err(0.0, 0.0);
  for (int i = -200; i <= 200; ++i) {
    for (int j = -200; j <= 200; ++j) {
      const double x = i / 200.0, y = j / 200.0;
      const double e = err(x, y);
      if (e < best) best = e, bx = x, by = y;
    }
  }
  for (double step = 1.0 / 200.0; step > 1e-12; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& [dx, dy] : {std::pair{step, 0.0}, std::pair{-step, 0.0}, std::pair{0.0, step}, std::pair{0.0, -step}}) {
        const double e = err(bx + dx, by + dy);
        if (e < best) best = e, bx += dx, by += dy, moved = true;
      }
    }
  }
  return {bx, by};
}

}  // namespace hdrelight::oracle

#endif  // HDRELIGHT_TESTS_ORACLES_HPP
