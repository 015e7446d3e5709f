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

#include <doctest.h>

#include <json.hpp>

#include "oscidrift/config.hpp"
#include "oscidrift/errors.hpp"

using namespace oscidrift;
using nlohmann::json;

namespace {

json valid() {
  return json{
      {"experiment", "noise-check"},
      {"density",
       {{"r_s", 1.0},
        {"alpha", 0.25},
        {"beta", 0.5},
        {"mu", 1.0},
        {"lambda", {{"kind", "const"}, {"value", 1.0}}},
        {"n_modes", 64}}},
      {"hamiltonian", {{"kind", "quadratic"}}},
      {"eps", {0.2, 0.1}},
      {"T", 1.0},
      {"n_paths", 100},
      {"seed", 7},
      {"output_dir", "out/test"}};
}

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("valid config round-trips through the echo") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(valid());
  CHECK(cfg.kind == ExperimentKind::NoiseCheck);
  CHECK(cfg.alpha == 0.25);
  CHECK(cfg.n_modes == 64);
  CHECK(cfg.eps.size() == 2);
  const ExperimentConfig again = ExperimentConfig::from_json(cfg.echo());
  CHECK(again.seed == cfg.seed);
  CHECK(again.output_dir == cfg.output_dir);
}

TEST_CASE("unknown keys are rejected at every level") {
  json j = valid();
  j["surprise"] = 1;
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                       doctest::Contains("surprise"), config_error);
  j = valid();
  j["density"]["typo"] = 2;
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                       doctest::Contains("typo"), config_error);
  j = valid();
  j["density"]["lambda"]["oops"] = 3;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
  j = valid();
  j["hamiltonian"]["zeta"] = 4;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
}

TEST_CASE("field-level validation messages") {
  json j = valid();
  j["density"].erase("alpha");
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                       doctest::Contains("alpha"), config_error);
  j = valid();
  j["experiment"] = "frobnicate";
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
  j = valid();
  j["eps"] = json::array();
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
  j = valid();
  j["eps"] = {1.5};
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
  j = valid();
  j["density"]["alpha"] = 0.7;  // violates alpha < 1/2
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), parameter_error);
  j = valid();
  j["density"]["n_modes"] = 7;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), config_error);
}

TEST_CASE("hamiltonian presets") {
  json j = valid();
  j["hamiltonian"] = {{"kind", "quartic_well"}, {"c4", 0.25}};
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  auto model = cfg.hamiltonian.make();
  CHECK(model->name() == "quartic_well");
  CHECK(model->value(1.0, 0.0) == doctest::Approx(0.75));
}

TEST_CASE("malformed files are reported as config errors") {
  CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/x.json"),
                  config_error);
}

TEST_SUITE_END();
