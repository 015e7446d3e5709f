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

#include "oscidrift/config.hpp"

#include <fstream>
#include <set>

#include "oscidrift/errors.hpp"

namespace oscidrift {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("unknown key \"" + it.key() + "\" in " + where);
}

double require_number(const json& j, const std::string& key,
                      const std::string& where) {
  if (!j.contains(key))
    throw config_error("missing key \"" + key + "\" in " + where);
  if (!j.at(key).is_number())
    throw config_error("key \"" + key + "\" in " + where + " must be a number");
  return j.at(key).get<double>();
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "noise-check") return ExperimentKind::NoiseCheck;
  if (s == "quadratic-demo") return ExperimentKind::QuadraticDemo;
  if (s == "limit-coeffs") return ExperimentKind::LimitCoeffs;
  if (s == "convergence-study") return ExperimentKind::ConvergenceStudy;
  if (s == "fbm-check") return ExperimentKind::FbmCheck;
  if (s == "exit-prob") return ExperimentKind::ExitProb;
  if (s == "w-integrals") return ExperimentKind::WIntegrals;
  throw config_error("unknown experiment kind \"" + s + "\"");
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::NoiseCheck: return "noise-check";
    case ExperimentKind::QuadraticDemo: return "quadratic-demo";
    case ExperimentKind::LimitCoeffs: return "limit-coeffs";
    case ExperimentKind::ConvergenceStudy: return "convergence-study";
    case ExperimentKind::FbmCheck: return "fbm-check";
    case ExperimentKind::ExitProb: return "exit-prob";
    case ExperimentKind::WIntegrals: return "w-integrals";
  }
  return "?";
}

std::unique_ptr<HamiltonianModel> HamiltonianSpec::make() const {
  if (kind == "quadratic") return make_quadratic();
  if (kind == "quartic_well") return make_quartic_well(c4);
  throw config_error("unknown hamiltonian kind \"" + kind + "\"");
}

SpectralDensity ExperimentConfig::make_density() const {
  return SpectralDensity(r_s, alpha, beta, mu, lambda);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  if (!j.is_object()) throw config_error("config root must be an object");
  reject_unknown_keys(j,
                      {"experiment", "density", "hamiltonian", "eps", "T",
                       "n_paths", "seed", "output_dir", "dt_fast",
                       "record_stride", "n_theta", "fourier_order"},
                      "config root");
  if (!j.contains("experiment") || !j.at("experiment").is_string())
    throw config_error("config needs a string \"experiment\" field");
  cfg.kind = parse_kind(j.at("experiment").get<std::string>());

  if (!j.contains("density") || !j.at("density").is_object())
    throw config_error("config needs a \"density\" object");
  const json& d = j.at("density");
  reject_unknown_keys(d, {"r_s", "alpha", "beta", "mu", "lambda", "n_modes"},
                      "density");
  cfg.r_s = require_number(d, "r_s", "density");
  cfg.alpha = require_number(d, "alpha", "density");
  cfg.beta = require_number(d, "beta", "density");
  cfg.mu = require_number(d, "mu", "density");
  if (d.contains("n_modes")) {
    cfg.n_modes = d.at("n_modes").get<int>();
  }
  if (d.contains("lambda")) {
    const json& l = d.at("lambda");
    if (!l.is_object() || !l.contains("kind") || !l.at("kind").is_string())
      throw config_error("density.lambda must be an object with a kind");
    const std::string lk = l.at("kind").get<std::string>();
    if (lk == "const") {
      reject_unknown_keys(l, {"kind", "value"}, "density.lambda");
      cfg.lambda.kind = LambdaSpec::Kind::Const;
      cfg.lambda.value = require_number(l, "value", "density.lambda");
    } else if (lk == "quadratic") {
      reject_unknown_keys(l, {"kind", "c"}, "density.lambda");
      cfg.lambda.kind = LambdaSpec::Kind::Quadratic;
      cfg.lambda.c = require_number(l, "c", "density.lambda");
    } else {
      throw config_error("density.lambda.kind must be const or quadratic");
    }
  }

  if (j.contains("hamiltonian")) {
    const json& h = j.at("hamiltonian");
    reject_unknown_keys(h, {"kind", "c4"}, "hamiltonian");
    if (!h.contains("kind") || !h.at("kind").is_string())
      throw config_error("hamiltonian needs a string kind");
    cfg.hamiltonian.kind = h.at("kind").get<std::string>();
    if (h.contains("c4"))
      cfg.hamiltonian.c4 = require_number(h, "c4", "hamiltonian");
    if (cfg.hamiltonian.kind != "quadratic" &&
        cfg.hamiltonian.kind != "quartic_well")
      throw config_error("unknown hamiltonian kind \"" + cfg.hamiltonian.kind +
                         "\"");
  }

  if (j.contains("eps")) {
    if (!j.at("eps").is_array() || j.at("eps").empty())
      throw config_error("eps must be a nonempty array");
    cfg.eps.clear();
    for (const auto& e : j.at("eps")) {
      if (!e.is_number()) throw config_error("eps entries must be numbers");
      cfg.eps.push_back(e.get<double>());
    }
  }
  if (j.contains("T")) cfg.T = require_number(j, "T", "config");
  if (j.contains("n_paths")) cfg.n_paths = j.at("n_paths").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string())
      throw config_error("output_dir must be a string");
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("dt_fast")) cfg.dt_fast = require_number(j, "dt_fast", "config");
  if (j.contains("record_stride"))
    cfg.record_stride = j.at("record_stride").get<int>();
  if (j.contains("n_theta")) cfg.n_theta = j.at("n_theta").get<int>();
  if (j.contains("fourier_order"))
    cfg.fourier_order = j.at("fourier_order").get<int>();

  // eager validation of the numeric blocks
  cfg.make_density();
  cfg.hamiltonian.make();
  for (double e : cfg.eps)
    if (!(e > 0.0 && e < 1.0))
      throw config_error("eps values must lie in (0,1)");
  if (!(cfg.T > 0.0)) throw config_error("T must be > 0");
  if (cfg.n_paths < 2) throw config_error("n_paths must be >= 2");
  if (cfg.n_modes < 2 || cfg.n_modes % 2)
    throw config_error("density.n_modes must be even and >= 2");
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw config_error(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::echo() const {
  json l;
  if (lambda.kind == LambdaSpec::Kind::Const)
    l = {{"kind", "const"}, {"value", lambda.value}};
  else
    l = {{"kind", "quadratic"}, {"c", lambda.c}};
  json h = {{"kind", hamiltonian.kind}};
  if (hamiltonian.kind == "quartic_well") h["c4"] = hamiltonian.c4;
  return json{{"experiment", to_string(kind)},
              {"density",
               {{"r_s", r_s},
                {"alpha", alpha},
                {"beta", beta},
                {"mu", mu},
                {"lambda", l},
                {"n_modes", n_modes}}},
              {"hamiltonian", h},
              {"eps", eps},
              {"T", T},
              {"n_paths", n_paths},
              {"seed", seed},
              {"output_dir", output_dir},
              {"dt_fast", dt_fast},
              {"record_stride", record_stride},
              {"n_theta", n_theta},
              {"fourier_order", fourier_order}};
}

}  // namespace oscidrift
