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
#include "oscidrift/noise.hpp"

using namespace oscidrift;

namespace {

SpectralDensity baseline() { return SpectralDensity(1.0, 0.25, 0.5, 1.0); }

// closed form for the baseline: R(t) = 2 sqrt(pi/t) erf(sqrt(t)), R(0) = 4
double baseline_R(double t) {
  if (t == 0.0) return 4.0;
  return 2.0 * std::sqrt(M_PI / t) * std::erf(std::sqrt(t));
}

}  // namespace

TEST_SUITE_BEGIN("noise");

TEST_CASE("covariance matches the closed form of the baseline density") {
  const SpectralDensity d = baseline();
  CHECK(d.covariance(0.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(d.covariance(1.0) == doctest::Approx(baseline_R(1.0)).epsilon(1e-11));
  for (double t : {0.5, 2.0, 5.0, 25.0})
    CHECK(d.covariance(t) == doctest::Approx(baseline_R(t)).epsilon(1e-10));
  // nonincreasing, positive, vanishing at infinity
  double prev = d.covariance(0.0);
  for (double t : {0.1, 1.0, 10.0, 100.0, 1e4}) {
    const double r = d.covariance(t);
    CHECK(r > 0.0);
    CHECK(r <= prev);
    prev = r;
  }
  CHECK(d.covariance(1e6) < 1e-2);
}

TEST_CASE("invalid density parameters are rejected") {
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.5, 0.5, 1.0), parameter_error);
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.6, 0.5, 1.0), parameter_error);
  CHECK_THROWS_AS(SpectralDensity(-1.0, 0.25, 0.5, 1.0), parameter_error);
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.25, -0.5, 1.0), parameter_error);
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.25, 0.5, 0.0), parameter_error);
  LambdaSpec zero{LambdaSpec::Kind::Const, 0.0, 0.0};
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.25, 0.5, 1.0, zero), parameter_error);
  // quadratic lambda dipping negative inside S
  LambdaSpec dip{LambdaSpec::Kind::Quadratic, 1.0, -2.0};
  CHECK_THROWS_AS(SpectralDensity(1.0, 0.25, 0.5, 1.0, dip), parameter_error);
}

TEST_CASE("gamma exponent and Hurst index") {
  const auto g = gamma_exponent(baseline());
  CHECK(g.gamma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.hurst == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(g.fbm_renormalizable);

  // alpha near 1/2 pushes gamma to 0+
  const auto g2 = gamma_exponent(SpectralDensity(1.0, 0.499, 0.5, 1.0));
  CHECK(g2.gamma == doctest::Approx(0.002).epsilon(1e-10));

  // boundary 2 alpha + 4 beta = 1: gamma = 2, no fBm renormalization
  const auto g3 = gamma_exponent(SpectralDensity(1.0, 0.25, 0.125, 1.0));
  CHECK(g3.gamma == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_FALSE(g3.fbm_renormalizable);
}

TEST_CASE("tail constant c0") {
  // c0 = lambda(0) Gamma(gamma) mu^-gamma / beta; baseline: 2 sqrt(pi)
  CHECK(baseline().c0() == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("discretization reproduces the covariance to 1e-6") {
  const SpectralDensity d = baseline();
  const NoiseDiscretization disc = discretize_spectrum(d, 64);
  CHECK(disc.size() == 64);
  CHECK(reconstruction_error(d, disc, {0.0, 0.5, 1.0, 2.0}) < 1e-6);
  CHECK(disc.total_weight() == doctest::Approx(4.0).epsilon(1e-10));
  // symmetric node set, no zero node
  for (std::size_t k = 0; k < 32; ++k) {
    CHECK(disc.nodes[k] == doctest::Approx(-disc.nodes[63 - k]).epsilon(1e-15));
    CHECK(disc.nodes[k] != 0.0);
    CHECK(disc.weights[k] > 0.0);
  }
}

TEST_CASE("two-mode discretization is symmetric with equal weights") {
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 2);
  REQUIRE(disc.size() == 2);
  CHECK(disc.nodes[0] == doctest::Approx(-disc.nodes[1]).epsilon(1e-15));
  CHECK(disc.weights[0] == doctest::Approx(disc.weights[1]).epsilon(1e-15));
}

TEST_CASE("odd or tiny mode counts are rejected") {
  CHECK_THROWS_AS(discretize_spectrum(baseline(), 3), parameter_error);
  CHECK_THROWS_AS(discretize_spectrum(baseline(), 0), parameter_error);
}

TEST_CASE("stationary initialization has per-mode variance w_k") {
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 8);
  rng::Stream stream(7, 0);
  const int n = 100000;
  std::vector<double> sums(8, 0.0), sq(8, 0.0);
  double v2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const NoiseState s = init_stationary(disc, stream);
    for (int k = 0; k < 8; ++k) {
      sums[k] += s.modes[k];
      sq[k] += s.modes[k] * s.modes[k];
    }
    const double v = sample_v(s);
    v2 += v * v;
  }
  for (int k = 0; k < 8; ++k) {
    const double mean = sums[k] / n;
    const double var = sq[k] / n - mean * mean;
    const double se = disc.weights[k] * std::sqrt(2.0 / n);
    CHECK(std::abs(var - disc.weights[k]) < 3.0 * se);
  }
  // E v(0)^2 = sum w_k = R(0)
  const double se_total = 4.0 * std::sqrt(2.0 / n);
  CHECK(std::abs(v2 / n - 4.0) < 3.0 * se_total);
}

TEST_CASE("degenerate all-zero weights give the zero state") {
  NoiseDiscretization disc;
  disc.nodes = {-0.5, 0.5};
  disc.weights = {0.0, 0.0};
  disc.decay_rates = {0.5, 0.5};
  rng::Stream stream(1, 0);
  const NoiseState s = init_stationary(disc, stream);
  CHECK(s.modes[0] == 0.0);
  CHECK(s.modes[1] == 0.0);
  CHECK(sample_v(s) == 0.0);
}

TEST_CASE("conditional mean factor of the exact step") {
  // p = 1, beta = 1/2, mu = 1, dt = 0.5: factor e^{-0.5}
  NoiseDiscretization disc;
  disc.nodes = {1.0};
  disc.weights = {1.0};
  disc.decay_rates = {1.0};
  NoiseState s;
  s.modes = {1.0};
  // kick has variance 1 - e^{-1}; silence it by zero weight to isolate decay
  NoiseDiscretization nokick = disc;
  nokick.weights = {0.0};
  rng::Stream stream(3, 0);
  step(s, nokick, 0.5, stream);
  CHECK(s.modes[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(s.t == doctest::Approx(0.5));
  CHECK_THROWS_AS(step(s, nokick, 0.0, stream), parameter_error);
  CHECK_THROWS_AS(step(s, nokick, -1.0, stream), parameter_error);
}

TEST_CASE("step composition is exact in law: variance identity per mode") {
  // stepping t1 then t2 must equal one step of t1 + t2 in law
  const double w = 0.7, a = 1.3;
  for (auto [t1, t2] : {std::pair{0.3, 0.9}, {1e-3, 2.0}, {5.0, 0.02}}) {
    const double d1 = std::exp(-a * t1), d2 = std::exp(-a * t2);
    const double var_two =
        d2 * d2 * (w * (1 - d1 * d1)) + w * (1 - d2 * d2);
    const double var_one = w * (1 - std::exp(-2 * a * (t1 + t2)));
    CHECK(var_two == doctest::Approx(var_one).epsilon(1e-12));
    CHECK(d1 * d2 == doctest::Approx(std::exp(-a * (t1 + t2))).epsilon(1e-13));
  }
}

TEST_CASE("small-dt step tends to the identity with O(dt) variance") {
  const NoiseDiscretization disc = discretize_spectrum(baseline(), 4);
  NoiseStepper stepper(disc, 1e-9);
  NoiseState s;
  s.t = 0.0;
  s.modes = {1.0, -2.0, 0.5, 3.0};
  rng::Stream stream(11, 0);
  NoiseState before = s;
  stepper.advance(s, stream);
  for (int k = 0; k < 4; ++k) {
    // mean factor within O(dt) of 1; kick is O(sqrt(dt)) in size
    CHECK(std::abs(s.modes[k] - before.modes[k]) < 1e-3);
  }
}

TEST_CASE("stationarity: moments are invariant under many steps") {
  const SpectralDensity d = baseline();
  const NoiseDiscretization disc = discretize_spectrum(d, 16);
  const int n_state = 4000, n_steps = 1000;
  const double dt = 0.05;
  rng::Stream stream(23, 0);
  NoiseStepper stepper(disc, dt);
  double v2_before = 0.0, v2_after = 0.0, v1_after = 0.0;
  for (int i = 0; i < n_state; ++i) {
    NoiseState s = init_stationary(disc, stream);
    const double v0 = sample_v(s);
    v2_before += v0 * v0;
    for (int j = 0; j < n_steps; ++j) stepper.advance(s, stream);
    const double v1 = sample_v(s);
    v1_after += v1;
    v2_after += v1 * v1;
  }
  const double R0 = disc.total_weight();
  const double se = R0 * std::sqrt(2.0 / n_state);
  CHECK(std::abs(v2_before / n_state - R0) < 3 * se);
  CHECK(std::abs(v2_after / n_state - R0) < 3 * se);
  CHECK(std::abs(v1_after / n_state) < 3 * std::sqrt(R0 / n_state));
}

TEST_CASE("lag covariance of a long run matches R") {
  const SpectralDensity d = baseline();
  const NoiseDiscretization disc = discretize_spectrum(d, 64);
  const double dt = 0.1;
  const std::size_t n = 200000;
  rng::Stream stream(31, 0);
  NoiseState s = init_stationary(disc, stream);
  NoiseStepper stepper(disc, dt);
  std::vector<double> series(n + 1);
  series[0] = sample_v(s);
  for (std::size_t i = 1; i <= n; ++i) {
    stepper.advance(s, stream);
    series[i] = sample_v(s);
  }
  for (double tau : {0.0, 1.0, 5.0}) {
    const std::size_t lag = std::lround(tau / dt);
    const std::size_t n_b = 50, batch = (n + 1 - lag) / n_b;
    std::vector<double> bm(n_b, 0.0);
    for (std::size_t b = 0; b < n_b; ++b) {
      for (std::size_t i = b * batch; i < (b + 1) * batch; ++i)
        bm[b] += series[i] * series[i + lag];
      bm[b] /= batch;
    }
    const Moments mo = moments(bm);
    CHECK(std::abs(mo.mean - baseline_R(tau)) < 3.5 * mo.std_error);
  }
}

TEST_CASE("sample_v sums the modes") {
  NoiseState s;
  s.modes = {1.5};
  CHECK(sample_v(s) == 1.5);
  s.modes = {1.0, -0.25, 0.5};
  CHECK(sample_v(s) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("algebraic tail: t^gamma R(t) is flat over [1e2, 1e4]") {
  const SpectralDensity d = baseline();
  const double g = d.gamma();
  std::vector<double> ratios;
  for (int i = 0; i <= 10; ++i) {
    const double t = 1e2 * std::pow(1e2, i / 10.0);
    ratios.push_back(std::pow(t, g) * d.covariance(t));
  }
  // log-log slope of R vs t within 0.05 of -gamma
  std::vector<double> ts, rs;
  for (int i = 0; i <= 10; ++i) {
    ts.push_back(1e2 * std::pow(1e2, i / 10.0));
    rs.push_back(d.covariance(ts[i]));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = ts.size();
  for (int i = 0; i < n; ++i) {
    sx += std::log(ts[i]);
    sy += std::log(rs[i]);
  }
  for (int i = 0; i < n; ++i) {
    sxx += (std::log(ts[i]) - sx / n) * (std::log(ts[i]) - sx / n);
    sxy += (std::log(ts[i]) - sx / n) * (std::log(rs[i]) - sy / n);
  }
  CHECK(std::abs(sxy / sxx + g) < 0.05);
}

TEST_SUITE_END();
