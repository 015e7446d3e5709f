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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "oscidrift/mc_stats.hpp"
#include "oscidrift/errors.hpp"
#include "oscidrift/oscillator.hpp"
#include "support/lattice_moments.hpp"

using namespace oscidrift;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

SpectralDensity baseline() { return SpectralDensity(1.0, 0.25, 0.5, 1.0); }

SimConfig base_config(const HamiltonianModel& model,
                      const NoiseDiscretization& disc) {
  SimConfig cfg;
  cfg.model = &model;
  cfg.disc = &disc;
  cfg.epsilon = 0.1;
  cfg.T = 1.0;
  cfg.x0 = 0.0;
  cfg.y0 = 1.0;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("oscillator");

TEST_CASE("conservative flow keeps the energy to 1e-8 over T = 1") {
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 8);
  for (bool quartic : {false, true}) {
    auto model = quartic ? make_quartic_well(0.25) : make_quadratic();
    SimConfig cfg = base_config(*model, disc);
    cfg.zero_noise = true;
    cfg.epsilon = 0.2;
    rng::Stream stream(5, 0);
    const TrajectoryRecord rec = integrate_rescaled(cfg, stream);
    const double H0 = rec.H_vals.front();
    for (double h : rec.H_vals) CHECK(std::abs(h - H0) < 1e-8);
  }
}

TEST_CASE("same seed reproduces the trajectory bit for bit") {
  auto model = make_quadratic();
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 16);
  SimConfig cfg = base_config(*model, disc);
  cfg.epsilon = 0.2;
  rng::Stream s1(77, 3), s2(77, 3);
  const TrajectoryRecord a = integrate_rescaled(cfg, s1);
  const TrajectoryRecord b = integrate_rescaled(cfg, s2);
  REQUIRE(a.x.size() == b.x.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    CHECK(a.x[i] == b.x[i]);
    CHECK(a.y[i] == b.y[i]);
    CHECK(a.H_vals[i] == b.H_vals[i]);
  }
}

TEST_CASE("config validation catches bad steps and missing pieces") {
  auto model = make_quadratic();
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 8);
  SimConfig cfg = base_config(*model, disc);
  cfg.dt_fast = 0.5;  // too coarse for the harmonic period
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = base_config(*model, disc);
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = base_config(*model, disc);
  cfg.model = nullptr;
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("rotating-frame identity: H along the path equals the Duhamel form") {
  // For the quadratic flow the splitting is exactly the rotating-frame
  // Duhamel formula with midpoint phases, so the identity is machine-level
  // when both sides consume the same noise path.
  auto model = make_quadratic();
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 32);
  SimConfig cfg = base_config(*model, disc);
  cfg.epsilon = 0.1;
  cfg.T = 0.25;
  cfg.record_stride = 1;
  rng::Stream stream(123, 0);
  const TrajectoryRecord rec = integrate_rescaled(cfg, stream);
  // rebuild the midpoint rotating sums from the recorded noise values
  const double h = rec.dt_fast_actual;
  double wt1 = 0.0, wt2 = 0.0;
  const std::size_t n = rec.v_vals.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double s_mid = h * j + 0.5 * h;
    wt1 += h * rec.v_vals[j] * std::sin(s_mid);
    wt2 += h * rec.v_vals[j] * std::cos(s_mid);
  }
  const double xe = cfg.x0 - cfg.epsilon * wt1;
  const double ye = cfg.y0 + cfg.epsilon * wt2;
  const double H_duhamel = 0.5 * (xe * xe + ye * ye);
  CHECK(rec.H_vals.back() ==
        doctest::Approx(H_duhamel).epsilon(1e-9));
}

TEST_CASE("trapezoid w accumulation matches the lattice oracle in law") {
  // ensemble second moment of w1(T) against the exact Gaussian lattice value
  const SpectralDensity density = baseline();
  const NoiseDiscretization disc = discretize_spectrum(density, 32);
  const double eps = 0.2, T = 0.5;
  const double dt = kTwoPi / 200.0;
  const double s_end = T / (eps * eps);
  const long n_steps = std::lround(s_end / dt);
  const double h = s_end / n_steps;
  const auto weights = testing::trapezoid_trig_weights(n_steps + 1, h, eps,
                                                       true, 0, n_steps);
  const double exact = testing::lattice_second_moment(disc, h, weights);

  PathTask task = [&](std::size_t, rng::Stream& stream) {
    const WPaths wp = oscillatory_integrals(disc, eps, {T}, stream, dt);
    return std::vector<double>{wp.w1[0] * wp.w1[0]};
  };
  const EnsembleSummary ens = run_ensemble(task, 4000, 99, 2);
  CHECK(std::abs(ens.mean_of(0) - exact) < 3.0 * ens.se_of(0));
}

TEST_CASE("split_angle: quadratic tau is exact and psi is noise-only") {
  auto model = make_quadratic();
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 16);
  const std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 2.0, 4.0,
                                 8.0, 16.0, 32.0, 64.0};
  const auto chart = build_chart(*model, grid, 64);

  SimConfig cfg = base_config(*model, disc);
  cfg.epsilon = 0.2;
  cfg.T = 0.2;
  SUBCASE("no noise: psi and I constant") {
    cfg.zero_noise = true;
    rng::Stream stream(1, 0);
    TrajectoryRecord rec = integrate_rescaled(cfg, stream);
    split_angle(rec, chart, *model);
    for (std::size_t j = 0; j < rec.times.size(); ++j) {
      CHECK(rec.I_vals[j] == doctest::Approx(rec.I_vals[0]).epsilon(1e-9));
      CHECK(rec.psi_vals[j] == doctest::Approx(rec.psi_vals[0]).epsilon(1e-7));
      // tau advances at exactly omega/eps^2
      CHECK(rec.tau_vals[j] ==
            doctest::Approx(rec.times[j] / (kTwoPi * cfg.epsilon * cfg.epsilon))
                .epsilon(1e-12));
    }
  }
  SUBCASE("with noise: theta = psi + tau reconstructs the angle") {
    rng::Stream stream(2, 0);
    TrajectoryRecord rec = integrate_rescaled(cfg, stream);
    split_angle(rec, chart, *model);
    for (std::size_t j = 0; j < rec.times.size(); ++j) {
      const double rebuilt = rec.psi_vals[j] + rec.tau_vals[j];
      double diff = rebuilt - rec.theta_vals[j];
      diff -= std::round(diff);
      CHECK(std::abs(diff) < 1e-9);
      CHECK(rec.I_vals[j] > 0.0);
    }
    // energy identity H = K(I) to interpolation tolerance
    for (std::size_t j = 0; j < rec.times.size(); ++j)
      CHECK(chart.K_of_I(rec.I_vals[j]) ==
            doctest::Approx(rec.H_vals[j]).epsilon(1e-9));
  }
}

TEST_CASE("split_angle flags chart coverage violations") {
  auto model = make_quadratic();
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 16);
  const auto chart = build_chart(*model, {2.9, 3.0, 3.1, 3.2}, 64);
  SimConfig cfg = base_config(*model, disc);
  cfg.epsilon = 0.2;
  cfg.T = 0.5;
  rng::Stream stream(3, 0);
  TrajectoryRecord rec = integrate_rescaled(cfg, stream);
  CHECK_THROWS_AS(split_angle(rec, chart, *model), numeric_error);
}

TEST_CASE("w paths vanish at t = 0 and integration failures carry the time") {
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 8);
  rng::Stream stream(4, 0);
  const WPaths wp = oscillatory_integrals(disc, 0.2, {0.0, 0.1}, stream);
  CHECK(wp.w1[0] == 0.0);
  CHECK(wp.w2[0] == 0.0);
  CHECK_THROWS_AS(
      oscillatory_integrals(disc, 0.2, {0.2, 0.1}, stream), parameter_error);
}

TEST_SUITE_END();
