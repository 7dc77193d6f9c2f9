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

// Serialization of experiment results. dB values carry two decimals and
// SSIM three; infinite PSNR is written as "inf".

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensorsim/eval.hpp"
#include "sensorsim/io.hpp"

namespace sensorsim {

inline std::string format_db(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return format_fixed(v, 2);
}

inline std::string format_ssim(double v) {
  if (std::isnan(v)) return "nan";
  return format_fixed(v, 3);
}

inline std::string format_variance(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string comparison_to_csv(const ComparisonTable& table) {
  std::string out = "image,kernel,pipeline,psnr_db,ssim\n";
  for (const auto& r : table.results) {
    out += r.image + "," + r.kernel + "," + pipeline_name(r.pipeline) + "," +
           format_db(r.psnr_db) + "," + format_ssim(r.ssim) + "\n";
  }
  return out;
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

template <typename CellFn, typename GainFn>
std::string metric_table(const ComparisonTable& table, const std::string& title, CellFn cell,
                         GainFn gain) {
  std::size_t name_w = std::string("Average gain").size();
  for (const auto& n : table.images) name_w = std::max(name_w, n.size());
  name_w += 2;
  constexpr std::size_t col_w = 11;

  std::string out = title + "\n";
  out += pad("", name_w);
  for (const auto& k : table.kernels) out += pad(k + " filter", 2 * col_w);
  out += "\n" + pad("", name_w);
  for (std::size_t i = 0; i < table.kernels.size(); ++i) {
    out += pad("Digital", col_w) + pad("Analog", col_w);
  }
  out += "\n";
  for (const auto& img : table.images) {
    out += pad(img, name_w);
    for (const auto& k : table.kernels) {
      for (PipelineId p : {PipelineId::kDigitalFirst, PipelineId::kAnalogFirst}) {
        const PipelineResult* r = table.find(img, k, p);
        out += pad(r ? cell(*r) : "-", col_w);
      }
    }
    out += "\n";
  }
  out += pad("Average gain", name_w);
  for (const auto& g : table.gains) out += pad("-", col_w) + pad(gain(g), col_w);
  out += "\n";
  return out;
}

}  // namespace detail

/// Two plain-text tables (PSNR, then SSIM): one row per image, a
/// Digital/Analog column pair per kernel, and an "Average gain" row.
inline std::string comparison_to_text(const ComparisonTable& table) {
  auto db = [](double v) { return format_db(v) + (std::isfinite(v) ? " dB" : ""); };
  std::string out = detail::metric_table(
      table, "PSNR", [&](const PipelineResult& r) { return db(r.psnr_db); },
      [&](const KernelGain& g) { return db(g.psnr_gain_db); });
  out += "\n";
  out += detail::metric_table(
      table, "SSIM", [](const PipelineResult& r) { return format_ssim(r.ssim); },
      [](const KernelGain& g) { return format_ssim(g.ssim_gain); });
  return out;
}

inline std::string crossover_to_csv(const CrossoverCurve& curve) {
  std::string out = "variance,psnr_avg,psnr_binom\n";
  for (const auto& s : curve.samples) {
    out += format_variance(s.variance) + "," + format_db(s.psnr_average) + "," +
           format_db(s.psnr_binomial) + "\n";
  }
  return out;
}

/// JSON-safe number: non-finite values become strings.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_db(v);
}

inline nlohmann::json crossover_to_json(const std::string& image, const CrossoverCurve& curve) {
  nlohmann::json j;
  j["image"] = image;
  nlohmann::json xs = nlohmann::json::array();
  for (double v : curve.intersections) xs.push_back(json_number(v));
  j["intersections"] = xs;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : curve.samples) {
    samples.push_back({{"variance", json_number(s.variance)},
                       {"psnr_avg", json_number(s.psnr_average)},
                       {"psnr_binom", json_number(s.psnr_binomial)}});
  }
  j["samples"] = samples;
  return j;
}

}  // namespace sensorsim
