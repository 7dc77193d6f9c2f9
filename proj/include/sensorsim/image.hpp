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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace sensorsim {

/// Thrown when a 3x3 neighbourhood is requested around a pixel that has no
/// full neighbourhood (border row/column or outside the image).
class BoundaryError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

template <typename T>
struct SampleTraits;

template <>
struct SampleTraits<double> {
  static constexpr const char* kName = "analog";
  static bool valid(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }
};

template <>
struct SampleTraits<std::uint8_t> {
  static constexpr const char* kName = "digital";
  static constexpr bool valid(std::uint8_t) { return true; }
};

/// Row-major single-channel image. Coordinates follow the sensor
/// convention: x is the row (0..height-1), y is the column (0..width-1).
///
/// Samples are validated once on construction and never mutated afterwards.
template <typename T>
class Image {
 public:
  using sample_type = T;

  Image() = default;

  Image(std::size_t width, std::size_t height, std::vector<T> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    if (samples_.size() != width_ * height_) {
      throw std::invalid_argument(std::string(SampleTraits<T>::kName) +
                                  " image: sample count does not match dimensions");
    }
    for (const T& s : samples_) {
      if (!SampleTraits<T>::valid(s)) {
        throw std::invalid_argument(std::string(SampleTraits<T>::kName) +
                                    " image: sample out of range");
      }
    }
  }

  static Image filled(std::size_t width, std::size_t height, T value) {
    return Image(width, height, std::vector<T>(width * height, value));
  }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  T operator()(std::size_t x, std::size_t y) const { return samples_[x * width_ + y]; }

  T at(std::size_t x, std::size_t y) const {
    if (x >= height_ || y >= width_) throw std::out_of_range("image: pixel out of range");
    return (*this)(x, y);
  }

  std::span<const T> row(std::size_t x) const {
    return std::span<const T>(samples_).subspan(x * width_, width_);
  }
  std::span<const T> samples() const { return samples_; }

  /// Interior region, i.e. the image with a one-pixel border removed.
  Image crop_interior() const {
    if (width_ < 3 || height_ < 3) throw std::invalid_argument("image: smaller than 3x3");
    std::vector<T> out;
    out.reserve((width_ - 2) * (height_ - 2));
    for (std::size_t x = 1; x + 1 < height_; ++x) {
      for (std::size_t y = 1; y + 1 < width_; ++y) out.push_back((*this)(x, y));
    }
    return Image(width_ - 2, height_ - 2, std::move(out));
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> samples_;
};

/// Normalized analog sensor signal, samples in [0,1].
using AnalogImage = Image<double>;
/// Post-ADC signal, 8-bit codes.
using DigitalImage = Image<std::uint8_t>;

/// A 3x3 cluster of analog samples around an interior center pixel.
/// values[s + 1][t + 1] holds image(center_x + s, center_y + t).
struct PixelBlock {
  std::size_t center_x = 0;
  std::size_t center_y = 0;
  std::array<std::array<double, 3>, 3> values{};

  double at(int s, int t) const { return values[s + 1][t + 1]; }

  friend bool operator==(const PixelBlock&, const PixelBlock&) = default;
};

inline bool is_interior(std::size_t width, std::size_t height, std::size_t x, std::size_t y) {
  return x >= 1 && y >= 1 && x + 2 <= height && y + 2 <= width;
}

/// Direct random-access read of the neighbourhood around (x, y).
inline PixelBlock extract_block(const AnalogImage& image, std::size_t x, std::size_t y) {
  if (!is_interior(image.width(), image.height(), x, y)) {
    throw BoundaryError("extract_block: (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") is not an interior pixel");
  }
  PixelBlock block{x, y, {}};
  for (int s = -1; s <= 1; ++s) {
    for (int t = -1; t <= 1; ++t) {
      block.values[s + 1][t + 1] = image(x + s, y + t);
    }
  }
  return block;
}

}  // namespace sensorsim
