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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensorsim/experiment.hpp"

namespace {

using sensorsim::ExperimentConfig;

void add_common(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed (recorded in every output)");
  cmd->add_option("--out-dir", cfg.out_dir, "Output directory");
}

void add_pipeline(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--input", cfg.inputs, "16-bit binary PGM input(s)")->required();
  cmd->add_option("--bits-out", cfg.bits_out, "ADC output bits")->check(CLI::Range(1, 8));
  cmd->add_option("--reference", cfg.reference, "Metric reference: original | filtered")
      ->check(CLI::IsMember({"original", "filtered"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensorsim: CMOS image sensor readout and analog pre-processing simulator"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string sigma2_list;

  auto* compare = app.add_subcommand("compare", "Analog-first vs digital-first comparison tables");
  add_common(compare, cfg);
  add_pipeline(compare, cfg);
  compare->add_option("--kernel", cfg.kernel, "average | binomial | both | <name from config>");
  compare->add_option("--kernel-config", cfg.kernel_config, "JSON file with extra kernels");

  auto* sweep = app.add_subcommand("sweep", "Noise-variance sweep, average vs binomial filter");
  add_common(sweep, cfg);
  add_pipeline(sweep, cfg);
  auto* sigma_opt = sweep->add_option("--sigma2", sigma2_list,
                                      "Comma-separated noise variances (default 1e-5..1e-1, 13 pts)");

  auto* readout = app.add_subcommand("readout", "Readout latency report and block trace");
  add_common(readout, cfg);
  readout->add_option("--rows", cfg.rows, "Sensor rows (m)");
  readout->add_option("--cols", cfg.cols, "Sensor columns (n)");
  readout->add_flag("--trace", cfg.trace, "Write readout_trace.csv");

  auto* gen = app.add_subcommand("gen", "Generate a synthetic 16-bit PGM corpus");
  add_common(gen, cfg);
  gen->add_option("--kind", cfg.kind, "all | constant | gradient | checkerboard | natural");
  gen->add_option("--width", cfg.width, "Image width");
  gen->add_option("--height", cfg.height, "Image height");
  gen->add_option("--count", cfg.count, "Number of natural-statistics images");
  gen->add_option("--value", cfg.value, "Constant image level in [0,1]");

  std::string replay_path;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run an experiment from its replay.json");
  replay->add_option("config", replay_path, "replay.json")->required();
  auto* replay_out_opt = replay->add_option("--out-dir", replay_out, "Override output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sensorsim::kExitUsage;
  }

  if (replay->parsed()) {
    std::optional<std::string> override_dir;
    if (replay_out_opt->count() > 0) override_dir = replay_out;
    return sensorsim::run_replay(replay_path, override_dir, std::cout, std::cerr);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (sigma_opt->count() > 0) {
    std::vector<double> values;
    std::string token;
    for (std::size_t i = 0; i <= sigma2_list.size(); ++i) {
      if (i == sigma2_list.size() || sigma2_list[i] == ',') {
        if (!token.empty()) {
          try {
            values.push_back(std::stod(token));
          } catch (const std::exception&) {
            std::cerr << "usage error: bad --sigma2 value '" << token << "'\n";
            return sensorsim::kExitUsage;
          }
        }
        token.clear();
      } else {
        token.push_back(sigma2_list[i]);
      }
    }
    cfg.sigma2 = values;
  }
  return sensorsim::run_experiment(cfg, std::cout, std::cerr);
}
