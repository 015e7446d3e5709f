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

#ifndef OSCIDRIFT_EXPERIMENTS_HPP_
#define OSCIDRIFT_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "oscidrift/config.hpp"

namespace oscidrift {

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double band = 0.0;  // |value - target| <= band passes
  bool pass = false;
  std::string note;
};

Check make_check(std::string name, double value, double target, double band);

struct RunFlags {
  int workers = 0;  // 0: hardware concurrency
  bool expensive = false;
  std::string route = "both";  // fourier | line-integral | both
};

struct ExperimentResult {
  std::vector<Check> checks;
  std::vector<std::string> files_written;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs the configured experiment, writes CSVs and summary.json under
// cfg.output_dir, and returns the per-check verdicts.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunFlags& flags);

}  // namespace oscidrift

#endif  // OSCIDRIFT_EXPERIMENTS_HPP_
