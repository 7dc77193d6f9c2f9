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

// JSON kernel/ratio-set configuration:
//
//   {
//     "kernels":   { "name": ["1/16", "2/16", ... nine entries] },
//     "ratio_set": ["1/16", "1/8", "1/4"]
//   }
//
// Both keys are optional.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensorsim/analog_frontend.hpp"
#include "sensorsim/io.hpp"
#include "sensorsim/rational.hpp"

namespace sensorsim {

struct KernelConfig {
  std::map<std::string, Kernel3x3> kernels;
  std::vector<Rational> ratio_set;
};

inline KernelConfig parse_kernel_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("kernel config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("kernel config: top level must be an object");

  auto rational_of = [](const nlohmann::json& v) {
    if (!v.is_string()) throw std::invalid_argument("kernel config: weights must be \"p/q\" strings");
    return Rational::parse(v.get<std::string>());
  };

  KernelConfig cfg;
  if (auto it = doc.find("kernels"); it != doc.end()) {
    if (!it->is_object()) throw std::invalid_argument("kernel config: \"kernels\" must be an object");
    for (const auto& [name, weights] : it->items()) {
      if (!weights.is_array() || weights.size() != 9) {
        throw std::invalid_argument("kernel config: kernel '" + name + "' needs nine weights");
      }
      std::array<Rational, 9> w;
      for (std::size_t i = 0; i < 9; ++i) w[i] = rational_of(weights[i]);
      cfg.kernels.emplace(name, Kernel3x3(w));
    }
  }
  if (auto it = doc.find("ratio_set"); it != doc.end()) {
    if (!it->is_array()) throw std::invalid_argument("kernel config: \"ratio_set\" must be a list");
    for (const auto& r : *it) cfg.ratio_set.push_back(rational_of(r));
  }
  return cfg;
}

inline KernelConfig load_kernel_config(const std::filesystem::path& path) {
  return parse_kernel_config(read_file(path));
}

}  // namespace sensorsim
