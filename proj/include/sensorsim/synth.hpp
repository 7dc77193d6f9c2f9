/*
 * Copyright 2026 The sensorsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Synthetic test images. Every generator snaps its samples to the 16-bit
// grid (multiples of 1/65535), so an image written with save_pgm16 and read
// back is identical to the in-memory one.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "sensorsim/image.hpp"
#include "sensorsim/signal_chain.hpp"

namespace sensorsim {

inline double snap16(double v) { return std::round(std::clamp(v, 0.0, 1.0) * 65535.0) / 65535.0; }

inline AnalogImage constant_image(std::size_t width, std::size_t height, double value) {
  return AnalogImage::filled(width, height, snap16(value));
}

/// Horizontal ramp from 0 at column 0 to 1 at the last column.
inline AnalogImage gradient_image(std::size_t width, std::size_t height) {
  std::vector<double> s(width * height);
  for (std::size_t x = 0; x < height; ++x) {
    for (std::size_t y = 0; y < width; ++y) {
      s[x * width + y] = width > 1 ? snap16(static_cast<double>(y) / (width - 1)) : 0.0;
    }
  }
  return AnalogImage(width, height, std::move(s));
}

inline AnalogImage checkerboard_image(std::size_t width, std::size_t height, std::size_t cell,
                                      double low = 0.25, double high = 0.75) {
  if (cell == 0) throw std::invalid_argument("checkerboard: cell size must be positive");
  std::vector<double> s(width * height);
  for (std::size_t x = 0; x < height; ++x) {
    for (std::size_t y = 0; y < width; ++y) {
      s[x * width + y] = snap16(((x / cell + y / cell) % 2 == 0) ? low : high);
    }
  }
  return AnalogImage(width, height, std::move(s));
}

struct NaturalImageParams {
  /// Octave amplitude grows as cell_size^exponent. 0.5 leaves enough fine
  /// texture that a 3x3 average blur costs roughly 40 dB PSNR, the range of
  /// real camera test images.
  double exponent = 0.5;
  double low = 0.1;
  double high = 0.9;
};

/// Smoothed random field with a power spectrum that decays with frequency:
/// a sum of value-noise octaves with lattice spacing 1, 2, 4, ... pixels,
/// each interpolated with a smoothstep-weighted bilinear blend, then scaled
/// linearly onto [low, high].
inline AnalogImage natural_image(std::size_t width, std::size_t height, std::uint64_t seed,
                                 const NaturalImageParams& params = {}) {
  if (width == 0 || height == 0) throw std::invalid_argument("natural_image: empty image");
  std::vector<double> field(width * height, 0.0);
  const std::size_t span = std::max(width, height);
  std::size_t octave = 0;
  for (std::size_t cell = 1; cell <= span / 2 || cell == 1; cell *= 2, ++octave) {
    const std::size_t gw = width / cell + 2;
    const std::size_t gh = height / cell + 2;
    std::mt19937_64 rng(derive_seed(seed, octave));
    std::vector<double> lattice(gw * gh);
    for (double& v : lattice) v = static_cast<double>(rng() >> 11) / 9007199254740992.0 * 2.0 - 1.0;
    const double amplitude = std::pow(static_cast<double>(cell), params.exponent);
    auto fade = [](double t) { return t * t * (3.0 - 2.0 * t); };
    for (std::size_t x = 0; x < height; ++x) {
      const std::size_t gx = x / cell;
      const double fx = fade(static_cast<double>(x % cell) / cell);
      for (std::size_t y = 0; y < width; ++y) {
        const std::size_t gy = y / cell;
        const double fy = fade(static_cast<double>(y % cell) / cell);
        const double v00 = lattice[gx * gw + gy];
        const double v01 = lattice[gx * gw + gy + 1];
        const double v10 = lattice[(gx + 1) * gw + gy];
        const double v11 = lattice[(gx + 1) * gw + gy + 1];
        const double top = v00 + (v01 - v00) * fy;
        const double bottom = v10 + (v11 - v10) * fy;
        field[x * width + y] += amplitude * (top + (bottom - top) * fx);
      }
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(field.begin(), field.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  for (double& v : field) {
    const double unit = range > 0 ? (v - lo) / range : 0.5;
    v = snap16(params.low + unit * (params.high - params.low));
  }
  return AnalogImage(width, height, std::move(field));
}

}  // namespace sensorsim
