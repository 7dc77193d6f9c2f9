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

// Command implementations behind the sensorsim CLI. Each command takes an
// ExperimentConfig, writes its outputs plus a replay.json into out_dir, and
// returns a process exit code.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensorsim/eval.hpp"
#include "sensorsim/io.hpp"
#include "sensorsim/kernel_config.hpp"
#include "sensorsim/pgm.hpp"
#include "sensorsim/readout.hpp"
#include "sensorsim/report.hpp"
#include "sensorsim/synth.hpp"

namespace sensorsim {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string kernel = "both";
  std::string kernel_config;
  int bits_out = 8;
  std::optional<std::vector<double>> sigma2;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  /// "original" or "filtered"; empty selects the command default
  /// (compare: filtered, sweep: original).
  std::string reference;
  // readout
  std::uint64_t rows = 480;
  std::uint64_t cols = 640;
  bool trace = false;
  // gen
  std::string kind = "all";
  std::size_t width = 512;
  std::size_t height = 512;
  std::size_t count = 20;
  double value = 0.5;
};

inline std::vector<double> default_sweep_grid() { return log_grid(1e-5, 1e-1, 13); }

inline std::string resolved_reference(const ExperimentConfig& c) {
  if (!c.reference.empty()) return c.reference;
  return c.command == "compare" ? "filtered" : "original";
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["tool"] = "sensorsim";
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  if (c.command == "compare" || c.command == "sweep") {
    j["inputs"] = c.inputs;
    j["bits_out"] = c.bits_out;
    j["reference"] = resolved_reference(c);
  }
  if (c.command == "compare") {
    j["kernel"] = c.kernel;
    j["kernel_config"] = c.kernel_config;
  }
  if (c.command == "sweep") j["sigma2"] = c.sigma2.value_or(default_sweep_grid());
  if (c.command == "readout") {
    j["rows"] = c.rows;
    j["cols"] = c.cols;
    j["trace"] = c.trace;
  }
  if (c.command == "gen") {
    j["kind"] = c.kind;
    j["width"] = c.width;
    j["height"] = c.height;
    j["count"] = c.count;
    j["value"] = c.value;
  }
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("command")) {
    throw UsageError("replay config: missing \"command\"");
  }
  ExperimentConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.seed = j.value("seed", c.seed);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.inputs = j.value("inputs", c.inputs);
    c.kernel = j.value("kernel", c.kernel);
    c.kernel_config = j.value("kernel_config", c.kernel_config);
    c.bits_out = j.value("bits_out", c.bits_out);
    c.reference = j.value("reference", c.reference);
    if (j.contains("sigma2")) c.sigma2 = j.at("sigma2").get<std::vector<double>>();
    c.rows = j.value("rows", c.rows);
    c.cols = j.value("cols", c.cols);
    c.trace = j.value("trace", c.trace);
    c.kind = j.value("kind", c.kind);
    c.width = j.value("width", c.width);
    c.height = j.value("height", c.height);
    c.count = j.value("count", c.count);
    c.value = j.value("value", c.value);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("replay config: ") + e.what());
  }
  return c;
}

namespace detail {

inline void write_replay(const ExperimentConfig& c) {
  write_file_atomic(std::filesystem::path(c.out_dir) / "replay.json",
                    config_to_json(c).dump(2) + "\n");
}

inline ReferenceMode parse_reference(const ExperimentConfig& c) {
  const std::string s = resolved_reference(c);
  if (s == "original") return ReferenceMode::kOriginal;
  if (s == "filtered") return ReferenceMode::kFilteredOriginal;
  throw UsageError("--reference must be 'original' or 'filtered'");
}

inline std::vector<NamedKernel> select_kernels(const ExperimentConfig& c) {
  if (c.kernel == "both") return default_kernels();
  if (c.kernel == "average") return {{"average", average_kernel()}};
  if (c.kernel == "binomial") return {{"binomial", binomial_kernel()}};
  if (!c.kernel_config.empty()) {
    const KernelConfig cfg = load_kernel_config(c.kernel_config);
    if (auto it = cfg.kernels.find(c.kernel); it != cfg.kernels.end()) {
      return {{it->first, it->second}};
    }
  }
  throw UsageError("unknown kernel '" + c.kernel + "'");
}

/// Loads every input; reports each unreadable file and fails after the scan.
inline std::vector<NamedImage> load_inputs(const ExperimentConfig& c, std::ostream& err) {
  if (c.inputs.empty()) throw UsageError("at least one --input is required");
  std::vector<NamedImage> images;
  bool failed = false;
  for (const auto& path : c.inputs) {
    try {
      images.push_back({std::filesystem::path(path).stem().string(), load_pgm16(path)});
    } catch (const std::exception& e) {
      err << "error: " << path << ": " << e.what() << "\n";
      failed = true;
    }
  }
  if (failed) throw IoError("unreadable input");
  return images;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace detail

inline int run_compare(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (c.bits_out < 1 || c.bits_out > 8) throw UsageError("--bits-out must be 1..8");
    const QuantizerSpec q = QuantizerSpec::from_bits(c.bits_out);
    const ReferenceMode mode = detail::parse_reference(c);
    const auto kernels = detail::select_kernels(c);
    const auto corpus = detail::load_inputs(c, err);

    const ComparisonTable table = compare_pipelines(corpus, kernels, q, mode);
    for (const auto& w : table.warnings) err << "warning: " << w << "\n";
    if (table.images.empty()) {
      err << "error: no usable input images\n";
      return int{kExitInput};
    }

    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir / "images");
    write_file_atomic(dir / "comparison.csv", comparison_to_csv(table));
    write_file_atomic(dir / "comparison.txt", comparison_to_text(table));
    for (const auto& r : table.results) {
      save_pgm8(r.output,
                dir / "images" / (r.image + "_" + r.kernel + "_" + pipeline_name(r.pipeline) + ".pgm"));
    }
    detail::write_replay(c);

    out << "seed " << c.seed << ", reference " << resolved_reference(c) << "\n";
    for (const auto& g : table.gains) {
      out << g.kernel << " filter: average gain " << format_db(g.psnr_gain_db) << " dB PSNR, "
          << format_ssim(g.ssim_gain) << " SSIM\n";
    }
    return int{kExitOk};
  });
}

inline int run_sweep(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (c.bits_out < 1 || c.bits_out > 8) throw UsageError("--bits-out must be 1..8");
    const QuantizerSpec q = QuantizerSpec::from_bits(c.bits_out);
    const ReferenceMode mode = detail::parse_reference(c);
    const std::vector<double> grid = c.sigma2.value_or(default_sweep_grid());
    if (grid.empty()) throw UsageError("--sigma2 list is empty");
    const auto corpus = detail::load_inputs(c, err);

    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    nlohmann::json summary;
    summary["seed"] = c.seed;
    summary["reference"] = resolved_reference(c);
    summary["curves"] = nlohmann::json::array();
    out << "seed " << c.seed << "\n";
    for (const auto& entry : corpus) {
      CrossoverCurve curve;
      try {
        curve = sweep_crossover(entry.image, grid, q, c.seed, mode);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_file_atomic(dir / ("sweep_" + entry.name + ".csv"), crossover_to_csv(curve));
      summary["curves"].push_back(crossover_to_json(entry.name, curve));
      out << entry.name << ": intersections";
      if (curve.intersections.empty()) out << " none";
      for (double v : curve.intersections) out << " " << format_variance(v);
      out << "\n";
    }
    write_file_atomic(dir / "crossover.json", summary.dump(2) + "\n");
    detail::write_replay(c);
    return int{kExitOk};
  });
}

inline int run_readout(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const TimingModel model{c.rows, c.cols, 1};
    try {
      model.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const std::uint64_t conventional = conventional_block_latency(model);
    const std::uint64_t proposed = proposed_block_latency(model);
    out << "sensor " << model.rows << " x " << model.cols << "\n"
        << "conventional block latency: " << conventional << " tau\n"
        << "proposed block latency: " << proposed << " tau\n"
        << "speedup: " << format_fixed(block_speedup(model), 2) << "x\n"
        << "blocks: " << (model.rows - 2) << " x " << (model.cols - 2) << " = "
        << block_count(model) << "\n";

    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    if (c.trace) {
      const ReadoutTrace trace = trace_readout(model);
      write_file_atomic(dir / "readout_trace.csv", trace_to_csv(trace));
      out << "frame time (block scan): " << trace.back().elapsed_tau << " tau\n";
    }
    detail::write_replay(c);
    return int{kExitOk};
  });
}

inline int run_gen(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const bool all = c.kind == "all";
    if (!all && c.kind != "constant" && c.kind != "gradient" && c.kind != "checkerboard" &&
        c.kind != "natural") {
      throw UsageError("--kind must be all, constant, gradient, checkerboard or natural");
    }
    if (c.width == 0 || c.height == 0) throw UsageError("--width/--height must be positive");
    if (!(c.value >= 0.0 && c.value <= 1.0)) throw UsageError("--value must be in [0,1]");

    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    std::size_t written = 0;
    auto emit = [&](const std::string& name, const AnalogImage& img) {
      save_pgm16(img, dir / (name + ".pgm"));
      ++written;
    };
    if (all || c.kind == "constant") emit("constant", constant_image(c.width, c.height, c.value));
    if (all || c.kind == "gradient") emit("gradient", gradient_image(c.width, c.height));
    if (all || c.kind == "checkerboard") {
      emit("checkerboard", checkerboard_image(c.width, c.height, 8));
    }
    if (all || c.kind == "natural") {
      for (std::size_t i = 0; i < c.count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "natural_%03zu", i);
        emit(name, natural_image(c.width, c.height, derive_seed(c.seed, i)));
      }
    }
    detail::write_replay(c);
    out << "wrote " << written << " images to " << dir.string() << " (seed " << c.seed << ")\n";
    return int{kExitOk};
  });
}

inline int run_experiment(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "compare") return run_compare(c, out, err);
  if (c.command == "sweep") return run_sweep(c, out, err);
  if (c.command == "readout") return run_readout(c, out, err);
  if (c.command == "gen") return run_gen(c, out, err);
  err << "usage error: unknown command '" << c.command << "'\n";
  return kExitUsage;
}

/// Re-runs the experiment recorded in a replay.json, optionally into a
/// different output directory.
inline int run_replay(const std::filesystem::path& replay_path,
                      const std::optional<std::string>& out_dir_override, std::ostream& out,
                      std::ostream& err) {
  ExperimentConfig c;
  try {
    c = config_from_json(nlohmann::json::parse(read_file(replay_path)));
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  if (out_dir_override) c.out_dir = *out_dir_override;
  return run_experiment(c, out, err);
}

}  // namespace sensorsim
