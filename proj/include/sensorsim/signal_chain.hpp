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

// Non-filter elements of the signal chain: the ideal A/D converter and
// seeded additive white Gaussian noise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensorsim/image.hpp"

namespace sensorsim {

/// Uniform quantizer onto `out_levels` codes. DigitalImage stores 8-bit
/// codes, so at most 256 levels are representable.
struct QuantizerSpec {
  int out_levels = 256;

  static QuantizerSpec from_bits(int bits) {
    if (bits < 1 || bits > 8) throw std::invalid_argument("quantizer: output bits must be 1..8");
    return QuantizerSpec{1 << bits};
  }

  int max_code() const { return out_levels - 1; }

  void validate() const {
    if (out_levels < 2 || out_levels > 256) {
      throw std::invalid_argument("quantizer: out_levels must be in [2, 256]");
    }
  }
};

/// round(value * (levels - 1)), halves rounding up. Input outside [0,1] is
/// rejected; clamping is the caller's responsibility.
inline int quantize(double value, const QuantizerSpec& spec = {}) {
  spec.validate();
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("quantize: value outside [0,1]");
  }
  return static_cast<int>(std::floor(value * spec.max_code() + 0.5));
}

inline double dequantize(int code, const QuantizerSpec& spec = {}) {
  spec.validate();
  if (code < 0 || code > spec.max_code()) {
    throw std::domain_error("dequantize: code " + std::to_string(code) + " out of range");
  }
  return static_cast<double>(code) / spec.max_code();
}

inline DigitalImage quantize_image(const AnalogImage& image, const QuantizerSpec& spec = {}) {
  std::vector<std::uint8_t> codes;
  codes.reserve(image.size());
  for (double s : image.samples()) codes.push_back(static_cast<std::uint8_t>(quantize(s, spec)));
  return DigitalImage(image.width(), image.height(), std::move(codes));
}

inline AnalogImage dequantize_image(const DigitalImage& image, const QuantizerSpec& spec = {}) {
  std::vector<double> out;
  out.reserve(image.size());
  for (std::uint8_t c : image.samples()) out.push_back(dequantize(c, spec));
  return AnalogImage(image.width(), image.height(), std::move(out));
}

/// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under base `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

/// Standard normal variates from std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard) via the basic Box-Muller transform. Both
/// variates of each pair are used. Uniforms take the top 53 bits of a draw.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kScale;  // (0,1]
    const double u2 = static_cast<double>(engine_() >> 11) * kScale;          // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct NoiseSpec {
  double variance = 0.0;
  std::uint64_t seed = 0;
};

/// Adds i.i.d. N(0, variance) to every sample and clamps to [0,1].
///
/// Row x draws from its own GaussianStream seeded with derive_seed(seed, x),
/// so rows can be generated independently with identical results.
inline AnalogImage add_awgn(const AnalogImage& image, const NoiseSpec& noise) {
  if (!(noise.variance >= 0.0) || !std::isfinite(noise.variance)) {
    throw std::invalid_argument("awgn: variance must be a finite value >= 0");
  }
  if (noise.variance == 0.0) return image;
  const double sigma = std::sqrt(noise.variance);
  std::vector<double> out;
  out.reserve(image.size());
  for (std::size_t x = 0; x < image.height(); ++x) {
    GaussianStream gauss(derive_seed(noise.seed, x));
    for (double s : image.row(x)) out.push_back(std::clamp(s + sigma * gauss.next(), 0.0, 1.0));
  }
  return AnalogImage(image.width(), image.height(), std::move(out));
}

}  // namespace sensorsim
