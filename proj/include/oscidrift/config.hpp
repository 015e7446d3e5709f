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

#ifndef OSCIDRIFT_CONFIG_HPP_
#define OSCIDRIFT_CONFIG_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscidrift/hamiltonian.hpp"
#include "oscidrift/noise.hpp"

namespace oscidrift {

enum class ExperimentKind {
  NoiseCheck,
  QuadraticDemo,
  LimitCoeffs,
  ConvergenceStudy,
  FbmCheck,
  ExitProb,
  WIntegrals,
};

std::string to_string(ExperimentKind kind);

struct HamiltonianSpec {
  std::string kind = "quadratic";
  double c4 = 0.25;

  std::unique_ptr<HamiltonianModel> make() const;
};

// Schema-validated experiment description.  Unknown keys anywhere in the
// file are rejected before any compute starts.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::NoiseCheck;
  // density block
  double r_s = 1.0, alpha = 0.25, beta = 0.5, mu = 1.0;
  LambdaSpec lambda;
  int n_modes = 64;
  // hamiltonian block
  HamiltonianSpec hamiltonian;
  // run block
  std::vector<double> eps{0.2, 0.1, 0.05};
  double T = 1.0;
  std::size_t n_paths = 2000;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  // optional tuning
  double dt_fast = 0.031415926535897932;
  int record_stride = 4;
  int n_theta = 256;
  int fourier_order = 32;

  SpectralDensity make_density() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json echo() const;
};

}  // namespace oscidrift

#endif  // OSCIDRIFT_CONFIG_HPP_
