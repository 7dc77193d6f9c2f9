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

// Analog-first versus digital-first acquisition workflows and the
// experiments built on them: a corpus comparison table and a noise-variance
// sweep that locates where the average and binomial filters trade places.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensorsim/analog_frontend.hpp"
#include "sensorsim/image.hpp"
#include "sensorsim/metrics.hpp"
#include "sensorsim/signal_chain.hpp"

namespace sensorsim {

enum class PipelineId { kAnalogFirst, kDigitalFirst };

inline const char* pipeline_name(PipelineId id) {
  return id == PipelineId::kAnalogFirst ? "analog" : "digital";
}

/// Filter in the analog domain, then convert.
inline DigitalImage run_analog_pipeline(const AnalogImage& image, const Kernel3x3& kernel,
                                        const QuantizerSpec& q = {}) {
  return quantize_image(filter_image_analog(image, kernel), q);
}

/// Convert first, filter the reconstructed levels, convert again.
inline DigitalImage run_digital_pipeline(const AnalogImage& image, const Kernel3x3& kernel,
                                         const QuantizerSpec& q = {}) {
  const AnalogImage reconstructed = dequantize_image(quantize_image(image, q), q);
  return quantize_image(filter_image_analog(reconstructed, kernel), q);
}

enum class ReferenceMode {
  /// Unfiltered original through the ideal ADC, interior crop.
  kOriginal,
  /// Original filtered at full precision and scaled to code units, without
  /// conversion: the output an ADC-free system would deliver.
  kFilteredOriginal,
};

inline const char* reference_name(ReferenceMode mode) {
  return mode == ReferenceMode::kOriginal ? "original" : "filtered";
}

inline CodePlane make_reference(const AnalogImage& clean, const Kernel3x3& kernel,
                                const QuantizerSpec& q, ReferenceMode mode) {
  if (mode == ReferenceMode::kOriginal) {
    return CodePlane::from(quantize_image(clean.crop_interior(), q));
  }
  return CodePlane::from(filter_image_analog(clean, kernel), q.max_code());
}

struct NamedImage {
  std::string name;
  AnalogImage image;
};

struct NamedKernel {
  std::string name;
  Kernel3x3 kernel;
};

inline std::vector<NamedKernel> default_kernels() {
  return {{"average", average_kernel()}, {"binomial", binomial_kernel()}};
}

struct PipelineResult {
  std::string image;
  std::string kernel;
  PipelineId pipeline = PipelineId::kAnalogFirst;
  DigitalImage output;
  double psnr_db = 0.0;
  double ssim = 0.0;
};

struct KernelGain {
  std::string kernel;
  double psnr_gain_db = 0.0;
  double ssim_gain = 0.0;
  std::size_t psnr_count = 0;
  std::size_t ssim_count = 0;
};

struct ComparisonTable {
  std::vector<std::string> images;
  std::vector<std::string> kernels;
  std::vector<PipelineResult> results;
  std::vector<KernelGain> gains;
  std::vector<std::string> warnings;

  const PipelineResult* find(const std::string& image, const std::string& kernel,
                             PipelineId pipeline) const {
    for (const auto& r : results) {
      if (r.image == image && r.kernel == kernel && r.pipeline == pipeline) return &r;
    }
    return nullptr;
  }
};

/// Smallest input that still leaves an 11x11 SSIM window after cropping.
inline constexpr std::size_t kMinCompareSize = 13;

/// Runs both workflows for every image x kernel and scores them against the
/// reference. Gains are mean(analog - digital) per kernel. A PSNR pair where
/// both sides are infinite counts as zero gain; a pair with exactly one
/// infinite side is left out of the mean with a warning.
inline ComparisonTable compare_pipelines(const std::vector<NamedImage>& corpus,
                                         const std::vector<NamedKernel>& kernels,
                                         const QuantizerSpec& q = {},
                                         ReferenceMode mode = ReferenceMode::kFilteredOriginal) {
  if (corpus.empty()) throw std::invalid_argument("compare: empty corpus");
  if (kernels.empty()) throw std::invalid_argument("compare: no kernels");
  const double peak = q.max_code();
  SsimParams ssim_params;
  ssim_params.dynamic_range = peak;

  ComparisonTable table;
  for (const auto& k : kernels) {
    table.kernels.push_back(k.name);
    table.gains.push_back({k.name});
  }
  std::vector<double> psnr_sum(kernels.size(), 0.0), ssim_sum(kernels.size(), 0.0);

  for (const auto& entry : corpus) {
    if (entry.image.width() < kMinCompareSize || entry.image.height() < kMinCompareSize) {
      table.warnings.push_back("skipping '" + entry.name + "': smaller than " +
                               std::to_string(kMinCompareSize) + "x" +
                               std::to_string(kMinCompareSize));
      continue;
    }
    table.images.push_back(entry.name);
    for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
      const auto& k = kernels[ki];
      const CodePlane reference = make_reference(entry.image, k.kernel, q, mode);
      PipelineResult analog{entry.name, k.name, PipelineId::kAnalogFirst,
                            run_analog_pipeline(entry.image, k.kernel, q)};
      PipelineResult digital{entry.name, k.name, PipelineId::kDigitalFirst,
                             run_digital_pipeline(entry.image, k.kernel, q)};
      for (PipelineResult* r : {&analog, &digital}) {
        const CodePlane out = CodePlane::from(r->output);
        r->psnr_db = psnr(reference, out, peak);
        r->ssim = ssim(reference, out, ssim_params);
      }

      const bool analog_inf = std::isinf(analog.psnr_db);
      const bool digital_inf = std::isinf(digital.psnr_db);
      if (analog_inf && digital_inf) {
        table.gains[ki].psnr_count++;
      } else if (analog_inf || digital_inf) {
        table.warnings.push_back("excluding '" + entry.name + "' / " + k.name +
                                 " from the PSNR gain: infinite PSNR");
      } else {
        psnr_sum[ki] += analog.psnr_db - digital.psnr_db;
        table.gains[ki].psnr_count++;
      }
      ssim_sum[ki] += analog.ssim - digital.ssim;
      table.gains[ki].ssim_count++;

      table.results.push_back(std::move(digital));
      table.results.push_back(std::move(analog));
    }
  }

  for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
    auto& g = table.gains[ki];
    g.psnr_gain_db = g.psnr_count ? psnr_sum[ki] / g.psnr_count
                                  : std::numeric_limits<double>::quiet_NaN();
    g.ssim_gain = g.ssim_count ? ssim_sum[ki] / g.ssim_count
                               : std::numeric_limits<double>::quiet_NaN();
  }
  return table;
}

struct CrossoverSample {
  double variance = 0.0;
  double psnr_average = 0.0;
  double psnr_binomial = 0.0;
};

struct CrossoverCurve {
  std::vector<CrossoverSample> samples;
  /// Variances where psnr_average - psnr_binomial changes sign.
  std::vector<double> intersections;
};

/// Locates sign changes of diff(i) = a_i - b_i over `variances`. Crossings
/// are interpolated linearly in log10(variance), or linearly in variance
/// when an endpoint is zero. An exact zero is reported at its own grid point.
inline std::vector<double> find_intersections(const std::vector<double>& variances,
                                              const std::vector<double>& diff) {
  std::vector<double> out;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (std::isnan(diff[i])) continue;
    if (diff[i] == 0.0) {
      out.push_back(variances[i]);
      continue;
    }
    if (i + 1 >= diff.size() || std::isnan(diff[i + 1]) || diff[i + 1] == 0.0) continue;
    if ((diff[i] < 0) == (diff[i + 1] < 0)) continue;
    const double frac = diff[i] / (diff[i] - diff[i + 1]);
    const double v0 = variances[i];
    const double v1 = variances[i + 1];
    if (v0 > 0 && v1 > 0) {
      const double l0 = std::log10(v0);
      const double l1 = std::log10(v1);
      out.push_back(std::pow(10.0, l0 + frac * (l1 - l0)));
    } else {
      out.push_back(v0 + frac * (v1 - v0));
    }
  }
  return out;
}

/// For each variance: add seeded noise to `image`, run the analog-first
/// workflow with the average and the binomial kernel, and score both
/// against the clean reference. Every variance reuses the same noise
/// substream (the seed), so the curves differ only through sigma.
inline CrossoverCurve sweep_crossover(const AnalogImage& image,
                                      const std::vector<double>& variances,
                                      const QuantizerSpec& q, std::uint64_t seed,
                                      ReferenceMode mode = ReferenceMode::kOriginal) {
  if (variances.empty()) throw std::invalid_argument("sweep: empty variance list");
  for (std::size_t i = 0; i < variances.size(); ++i) {
    if (!(variances[i] >= 0.0) || !std::isfinite(variances[i])) {
      throw std::invalid_argument("sweep: variances must be finite and >= 0");
    }
    if (i > 0 && !(variances[i] > variances[i - 1])) {
      throw std::invalid_argument("sweep: variances must be strictly increasing");
    }
  }
  const double peak = q.max_code();
  const Kernel3x3 avg = average_kernel();
  const Kernel3x3 binom = binomial_kernel();
  const CodePlane ref_avg = make_reference(image, avg, q, mode);
  const CodePlane ref_binom =
      mode == ReferenceMode::kOriginal ? ref_avg : make_reference(image, binom, q, mode);

  CrossoverCurve curve;
  std::vector<double> diff;
  for (double v : variances) {
    const AnalogImage noisy = add_awgn(image, NoiseSpec{v, seed});
    CrossoverSample s{
        v, psnr(ref_avg, CodePlane::from(run_analog_pipeline(noisy, avg, q)), peak),
        psnr(ref_binom, CodePlane::from(run_analog_pipeline(noisy, binom, q)), peak)};
    diff.push_back(s.psnr_average - s.psnr_binomial);
    curve.samples.push_back(s);
  }
  curve.intersections = find_intersections(variances, diff);
  return curve;
}

/// n points spaced evenly in log10 between lo and hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace sensorsim
