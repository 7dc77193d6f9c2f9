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

// PSNR and SSIM. Both operate on CodePlane, a real-valued grid in ADC code
// units, so a reference may be either an 8-bit image or a full-precision
// analog signal scaled to the code range.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sensorsim/image.hpp"

namespace sensorsim {

struct CodePlane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  static CodePlane from(const DigitalImage& image) {
    return {image.width(), image.height(),
            std::vector<double>(image.samples().begin(), image.samples().end())};
  }

  /// Analog samples multiplied by `scale` (the largest code).
  static CodePlane from(const AnalogImage& image, double scale) {
    CodePlane p{image.width(), image.height(), {}};
    p.values.reserve(image.size());
    for (double s : image.samples()) p.values.push_back(s * scale);
    return p;
  }

  const double* row(std::size_t r) const { return values.data() + r * width; }
};

inline void require_same_shape(const CodePlane& a, const CodePlane& b) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("metric: image dimensions differ");
  }
}

inline double mean_squared_error(const CodePlane& reference, const CodePlane& test) {
  require_same_shape(reference, test);
  if (reference.values.empty()) throw std::invalid_argument("metric: empty image");
  double sum = 0.0;
  for (std::size_t i = 0; i < reference.values.size(); ++i) {
    const double d = reference.values[i] - test.values[i];
    sum += d * d;
  }
  return sum / static_cast<double>(reference.values.size());
}

/// 10 log10(peak^2 / MSE) in dB; +infinity for identical inputs.
inline double psnr(const CodePlane& reference, const CodePlane& test, double peak = 255.0) {
  const double mse = mean_squared_error(reference, test);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

inline double psnr(const DigitalImage& reference, const DigitalImage& test, double peak = 255.0) {
  return psnr(CodePlane::from(reference), CodePlane::from(test), peak);
}

struct SsimParams {
  std::size_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

namespace detail {

inline std::vector<double> gaussian_taps(std::size_t size, double sigma) {
  std::vector<double> taps(size);
  const double mid = static_cast<double>(size - 1) / 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double d = static_cast<double>(i) - mid;
    taps[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

}  // namespace detail

/// Mean structural similarity over every fully-contained window position
/// (no padding). Local statistics use a normalized Gaussian window applied
/// separably; constants are C1 = (k1 L)^2 and C2 = (k2 L)^2.
inline double ssim(const CodePlane& reference, const CodePlane& test,
                   const SsimParams& params = {}) {
  require_same_shape(reference, test);
  const std::size_t win = params.window;
  const std::size_t w = reference.width;
  const std::size_t h = reference.height;
  if (win == 0 || w < win || h < win) {
    throw std::invalid_argument("ssim: image smaller than the window");
  }
  const std::vector<double> taps = detail::gaussian_taps(win, params.sigma);
  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

  // Horizontal pass of x, y, x^2, y^2, xy over every row.
  const std::size_t ow = w - win + 1;
  const std::size_t oh = h - win + 1;
  std::vector<double> hx(h * ow), hy(h * ow), hxx(h * ow), hyy(h * ow), hxy(h * ow);
  for (std::size_t r = 0; r < h; ++r) {
    const double* ra = reference.row(r);
    const double* rb = test.row(r);
    for (std::size_t c = 0; c < ow; ++c) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (std::size_t k = 0; k < win; ++k) {
        const double a = ra[c + k];
        const double b = rb[c + k];
        const double t = taps[k];
        sx += t * a;
        sy += t * b;
        sxx += t * (a * a);
        syy += t * (b * b);
        sxy += t * (a * b);
      }
      const std::size_t i = r * ow + c;
      hx[i] = sx;
      hy[i] = sy;
      hxx[i] = sxx;
      hyy[i] = syy;
      hxy[i] = sxy;
    }
  }

  double total = 0.0;
  for (std::size_t r = 0; r < oh; ++r) {
    for (std::size_t c = 0; c < ow; ++c) {
      double mx = 0, my = 0, exx = 0, eyy = 0, exy = 0;
      for (std::size_t k = 0; k < win; ++k) {
        const std::size_t i = (r + k) * ow + c;
        const double t = taps[k];
        mx += t * hx[i];
        my += t * hy[i];
        exx += t * hxx[i];
        eyy += t * hyy[i];
        exy += t * hxy[i];
      }
      const double vx = exx - mx * mx;
      const double vy = eyy - my * my;
      const double cov = exy - mx * my;
      total += ((2 * mx * my + c1) * (2 * cov + c2)) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
  }
  return total / static_cast<double>(ow * oh);
}

inline double ssim(const DigitalImage& reference, const DigitalImage& test,
                   const SsimParams& params = {}) {
  return ssim(CodePlane::from(reference), CodePlane::from(test), params);
}

}  // namespace sensorsim
