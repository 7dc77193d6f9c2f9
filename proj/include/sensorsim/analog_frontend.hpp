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

// Pre-ADC filter stage: 3x3 linear spatial filtering and its realization as
// a summing amplifier followed by a unity inverting amplifier, with weights
// set by switchable reference-resistor ratios.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensorsim/image.hpp"
#include "sensorsim/rational.hpp"
#include "sensorsim/readout.hpp"

namespace sensorsim {

/// Nine exact weights w(s, t), s, t in {-1, 0, 1}, stored row-major in s.
class Kernel3x3 {
 public:
  Kernel3x3() = default;
  explicit Kernel3x3(const std::array<Rational, 9>& weights) : weights_(weights) {}

  Rational weight(int s, int t) const { return weights_[index(s, t)]; }
  const std::array<Rational, 9>& weights() const { return weights_; }

  Rational sum() const {
    Rational total;
    for (const Rational& w : weights_) total = total + w;
    return total;
  }

  /// Non-negative with unity DC gain.
  bool is_smoothing() const {
    return std::all_of(weights_.begin(), weights_.end(),
                       [](const Rational& w) { return w >= Rational(0); }) &&
           sum() == Rational(1);
  }

  static constexpr std::size_t index(int s, int t) {
    return static_cast<std::size_t>((s + 1) * 3 + (t + 1));
  }

  friend bool operator==(const Kernel3x3&, const Kernel3x3&) = default;

 private:
  std::array<Rational, 9> weights_{};
};

inline Kernel3x3 average_kernel() {
  std::array<Rational, 9> w;
  w.fill(Rational(1, 9));
  return Kernel3x3(w);
}

inline Kernel3x3 binomial_kernel() {
  constexpr std::array<int, 9> taps = {1, 2, 1, 2, 4, 2, 1, 2, 1};
  std::array<Rational, 9> w;
  for (std::size_t i = 0; i < 9; ++i) w[i] = Rational(taps[i], 16);
  return Kernel3x3(w);
}

inline Kernel3x3 identity_kernel() {
  std::array<Rational, 9> w;
  w[Kernel3x3::index(0, 0)] = Rational(1);
  return Kernel3x3(w);
}

/// Amplifier inputs for a block: V[index(s, t)] = f(x - s, y - t), so that
/// input i is weighted by w(s, t) exactly as in the convolution sum.
inline std::array<double, 9> block_voltages(const PixelBlock& block) {
  std::array<double, 9> v{};
  for (int s = -1; s <= 1; ++s) {
    for (int t = -1; t <= 1; ++t) v[Kernel3x3::index(s, t)] = block.at(-s, -t);
  }
  return v;
}

/// f'(x, y) = sum_{s,t} f(x - s, y - t) w(s, t).
///
/// The sum is anchored on the center sample, so a flat block passes through
/// a unity-gain kernel bit-exactly.
inline double convolve3x3(const PixelBlock& block, const Kernel3x3& kernel) {
  const double center = block.at(0, 0);
  double deviation = 0.0;
  for (int s = -1; s <= 1; ++s) {
    for (int t = -1; t <= 1; ++t) {
      deviation += kernel.weight(s, t).to_double() * (block.at(-s, -t) - center);
    }
  }
  return center * kernel.sum().to_double() + deviation;
}

/// Resistor configuration of the two-stage amplifier: ratios[i] = Rf1/R_i
/// for input i (kernel order), restore_gain = Rf2/Ri of the inverting stage.
struct RatioAssignment {
  std::array<Rational, 9> ratios{};
  Rational restore_gain{1};
  /// ratios[i] - weight[i] for the kernel the assignment was derived from.
  std::array<Rational, 9> weight_error{};
  /// restore_gain * sum(ratios) - sum(weights).
  Rational dc_gain_deviation{};

  Rational max_abs_error() const {
    Rational worst;
    for (const Rational& e : weight_error) worst = std::max(worst, abs(e));
    return worst;
  }
};

/// Exact assignment (ratios equal the weights).
inline RatioAssignment exact_ratios(const Kernel3x3& kernel) {
  RatioAssignment a;
  a.ratios = kernel.weights();
  return a;
}

/// Maps each weight to the nearest available ratio by absolute error; exact
/// ties go to the smaller ratio.
inline RatioAssignment kernel_to_ratios(const Kernel3x3& kernel,
                                        std::span<const Rational> ratio_set) {
  if (ratio_set.empty()) throw std::invalid_argument("kernel_to_ratios: empty ratio set");
  RatioAssignment a;
  for (std::size_t i = 0; i < 9; ++i) {
    const Rational w = kernel.weights()[i];
    Rational best = ratio_set.front();
    for (const Rational& r : ratio_set) {
      const Rational d = abs(w - r);
      const Rational best_d = abs(w - best);
      if (d < best_d || (d == best_d && r < best)) best = r;
    }
    a.ratios[i] = best;
    a.weight_error[i] = best - w;
  }
  Rational ratio_sum;
  for (const Rational& r : a.ratios) ratio_sum = ratio_sum + r;
  a.dc_gain_deviation = a.restore_gain * ratio_sum - kernel.sum();
  return a;
}

/// Ideal summing amplifier (output -sum(Rf1/R_i * V_i)) cascaded with an
/// inverting stage of gain Rf2/Ri. The result is clamped to the [0,1] rails.
inline double weighted_sum_stage(std::span<const double, 9> voltages,
                                 const RatioAssignment& assignment) {
  double summing_node = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    summing_node -= assignment.ratios[i].to_double() * voltages[i];
  }
  const double out = -assignment.restore_gain.to_double() * summing_node;
  return std::clamp(out, 0.0, 1.0);
}

/// Filters every interior pixel as it is streamed out of the block readout.
/// The result is (m-2) x (n-2), clamped to [0,1].
inline AnalogImage filter_image_analog(const AnalogImage& image, const Kernel3x3& kernel) {
  if (image.width() < 3 || image.height() < 3) {
    throw std::invalid_argument("filter: image smaller than 3x3");
  }
  std::vector<double> out;
  out.reserve((image.width() - 2) * (image.height() - 2));
  for_each_block(image, [&](const PixelBlock& block, std::uint64_t) {
    out.push_back(std::clamp(convolve3x3(block, kernel), 0.0, 1.0));
  });
  return AnalogImage(image.width() - 2, image.height() - 2, std::move(out));
}

}  // namespace sensorsim
