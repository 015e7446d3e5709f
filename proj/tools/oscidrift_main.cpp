// Copyright 2026 The oscidrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "oscidrift/config.hpp"
#include "oscidrift/errors.hpp"
#include "oscidrift/experiments.hpp"
#include "oscidrift/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"oscidrift: forced-oscillator diffusion experiments"};
  app.set_version_flag("--version", oscidrift::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  oscidrift::RunFlags flags;

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  run->add_option("--workers", flags.workers,
                  "worker threads (0 = hardware)");
  run->add_flag("--expensive", flags.expensive,
                "allow eps below 0.05 (cost scales as eps^-2)");
  run->add_option("--route", flags.route,
                  "coefficient route: fourier | line-integral | both");

  CLI::App* validate =
      app.add_subcommand("validate", "check a config and exit");
  validate->add_option("config", config_path, "experiment config (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      oscidrift::ExperimentConfig::from_file(config_path);
      std::printf("ok: %s\n", config_path.c_str());
      return 0;
    }
    const auto cfg = oscidrift::ExperimentConfig::from_file(config_path);
    const auto result = oscidrift::run_experiment(cfg, flags);
    for (const auto& c : result.checks)
      std::printf("[%s] %s: value=%.6g target=%.6g band=%.3g%s\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.target,
                  c.band, c.note.empty() ? "" : ("  (" + c.note + ")").c_str());
    std::printf("%s: %s\n", result.all_passed() ? "PASS" : "FAIL",
                cfg.output_dir.c_str());
    return result.all_passed() ? 0 : 2;
  } catch (const oscidrift::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
