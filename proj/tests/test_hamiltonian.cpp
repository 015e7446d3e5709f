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

#include "oscidrift/hamiltonian.hpp"

using namespace oscidrift;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> small_grid() {
  return {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4};
}

// a saddle at the origin: fails the positive-definite Hessian check
class SaddleModel final : public HamiltonianModel {
 public:
  double value(double x, double y) const override {
    return 0.5 * y * y - 0.5 * x * x + 0.25 * x * x * x * x;
  }
  double dx(double x, double) const override { return -x + x * x * x; }
  double dy(double, double y) const override { return y; }
  std::array<double, 4> hessian_at_origin() const override {
    return {-1.0, 0.0, 0.0, 1.0};
  }
  std::string name() const override { return "saddle"; }
};

}  // namespace

TEST_SUITE_BEGIN("hamiltonian");

TEST_CASE("single-well validation rejects a saddle") {
  SaddleModel bad;
  CHECK_THROWS_AS(bad.check_single_well(), model_error);
}

TEST_CASE("quadratic action of energy: I = 2 pi E") {
  auto model = make_quadratic();
  CHECK(action_of_energy(*model, 0.5) == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(action_of_energy(*model, 1e-4) ==
        doctest::Approx(kTwoPi * 1e-4).epsilon(1e-8));
  CHECK(energy_of_action(*model, M_PI) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("quartic well action approaches the harmonic limit at small E") {
  auto model = make_quartic_well(0.25);
  const double E = 0.01;
  const double I = action_of_energy(*model, E);
  CHECK(std::abs(I - kTwoPi * E) / (kTwoPi * E) < 0.01);
  // first perturbative correction: I = 2 pi E (1 - (3/2) c4 E + ...)
  CHECK(I == doctest::Approx(kTwoPi * E * (1.0 - 1.5 * 0.25 * E)).epsilon(5e-4));
}

TEST_CASE("quartic frequency is increasing (hardening spring)") {
  auto model = make_quartic_well(0.25);
  const auto chart = build_chart(*model, small_grid(), 64);
  const auto& om = chart.omega_values();
  CHECK(om.front() == doctest::Approx(1.0 / kTwoPi).epsilon(2e-2));
  for (std::size_t i = 1; i < om.size(); ++i) CHECK(om[i] > om[i - 1]);
}

TEST_CASE("quadratic chart closed forms") {
  auto model = make_quadratic();
  std::vector<double> grid{1.0 / (4.0 * M_PI), 0.5, 1.0, 2.0};
  const auto chart = build_chart(*model, grid, 128);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(chart.omega_values()[i] ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-12));
    CHECK(chart.K_values()[i] ==
          doctest::Approx(grid[i] / kTwoPi).epsilon(1e-12));
  }
  // a(I, theta) = 2 sqrt(pi I) sin(2 pi theta - pi/2),
  // b(I, theta) = cos(2 pi theta - pi/2) / (2 sqrt(pi I));
  // pinned points: a(1/(4 pi), 1/2) = 1, b(1/(4 pi), 1/4) = 1
  const std::size_t row = chart.row_of(1.0 / (4.0 * M_PI));
  const int half = chart.n_theta() / 2, quarter = chart.n_theta() / 4;
  CHECK(chart.a_row(row)[half] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chart.b_row(row)[quarter] == doctest::Approx(1.0).epsilon(1e-12));
  // gauge: theta = 0 sits on the y-axis, below the minimum
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(chart.orbit(i)[0][0]) < 1e-10);
    CHECK(chart.orbit(i)[0][1] < 0.0);
  }
}

TEST_CASE("numeric chart agrees with the analytic quadratic one") {
  auto model = make_quadratic();
  std::vector<double> grid{0.3, 1.0, 3.0};
  const auto analytic = build_chart(*model, grid, 64);
  const auto numeric = build_chart(*model, grid, 64, /*force_numeric=*/true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(numeric.omega_values()[i] ==
          doctest::Approx(analytic.omega_values()[i]).epsilon(1e-10));
    CHECK(numeric.K_values()[i] ==
          doctest::Approx(analytic.K_values()[i]).epsilon(1e-10));
    for (int j = 0; j < 64; ++j) {
      CHECK(numeric.a_row(i)[j] ==
            doctest::Approx(analytic.a_row(i)[j]).epsilon(1e-6));
      CHECK(std::abs(numeric.b_row(i)[j] - analytic.b_row(i)[j]) <
            1e-5 / std::sqrt(grid[i]));
    }
  }
}

TEST_CASE("a is mean-free in the angle on every chart row") {
  auto model = make_quartic_well(0.25);
  const auto chart = build_chart(*model, small_grid(), 128);
  for (std::size_t i = 0; i < chart.I_grid().size(); ++i) {
    double mean = 0.0;
    for (double av : chart.a_row(i)) mean += av;
    mean /= chart.n_theta();
    CHECK(std::abs(mean) < 1e-8);
  }
}

TEST_CASE("derivative relation d_theta b = -d_I a") {
  auto model = make_quartic_well(0.25);
  std::vector<double> grid{0.56, 0.58, 0.6, 0.62, 0.64};
  const auto chart = build_chart(*model, grid, 128);
  const int N = chart.n_theta();
  const std::size_t i = 2;  // interior row
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < N; ++j) {
    const double dtheta_b =
        (chart.b_row(i)[(j + 1) % N] - chart.b_row(i)[(j - 1 + N) % N]) *
        N / 2.0;
    const double dI_a = (chart.a_row(i + 1)[j] - chart.a_row(i - 1)[j]) /
                        (grid[i + 1] - grid[i - 1]);
    worst = std::max(worst, std::abs(dtheta_b + dI_a));
    scale = std::max(scale, std::abs(dI_a));
  }
  CHECK(worst / scale < 1e-3);
}

TEST_CASE("orbit angle at the section and at a quarter period") {
  auto model = make_quartic_well(0.25);
  const double E = 0.8;
  OrbitData od = trace_orbit(*model, E, 8);
  // points sampled at theta_j = j/8 reproduce their own angles
  for (int j : {1, 3, 5, 7}) {
    const double th = orbit_angle(*model, od.points[j]);
    CHECK(th == doctest::Approx(j / 8.0).epsilon(1e-7));
  }
}

TEST_CASE("symplectic period identity omega * Lambda = 1") {
  // Lambda from the orbit geometry (8th-order periodic differences) times
  // the frequency from period detection
  for (bool quartic : {false, true}) {
    auto model = quartic ? make_quartic_well(0.25) : make_quadratic();
    const double E = 0.7;
    const int N = 512;
    OrbitData od = trace_orbit(*model, E, N);
    double lambda = 0.0;
    static const double w8[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0,
                                 -1.0 / 280.0};
    for (int j = 0; j < N; ++j) {
      double dx = 0.0, dy = 0.0;
      for (int s = 1; s <= 4; ++s) {
        const auto& pp = od.points[(j + s) % N];
        const auto& pm = od.points[(j - s + N) % N];
        dx += w8[s - 1] * (pp[0] - pm[0]);
        dy += w8[s - 1] * (pp[1] - pm[1]);
      }
      dx *= N;
      dy *= N;
      const auto g = model->grad(od.points[j][0], od.points[j][1]);
      lambda += std::hypot(dx, dy) / std::hypot(g[0], g[1]);
    }
    lambda /= N;
    CHECK(std::abs(lambda / od.period - 1.0) < 1e-6);
  }
}

TEST_CASE("fourier coefficients of the quadratic rows") {
  auto model = make_quadratic();
  std::vector<double> grid{0.5, 1.0, 2.0};
  const auto chart = build_chart(*model, grid, 256);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double I = grid[i];
    const OrbitFourier f = chart.fourier(i, 32);
    CHECK(std::abs(f.a(1) - std::complex<double>(-std::sqrt(M_PI * I), 0.0)) <
          1e-10);
    CHECK(std::abs(f.a(-1) - std::conj(f.a(1))) < 1e-14);
    CHECK(std::abs(f.a(0)) == 0.0);
    CHECK(f.a0_residual < 1e-12);
    for (int n = 2; n <= 32; ++n) CHECK(std::abs(f.a(n)) < 1e-10);
    // b has only the n = +/-1 harmonics, magnitude 1/(4 sqrt(pi I))
    const double bmag = 1.0 / (4.0 * std::sqrt(M_PI * I));
    CHECK(std::abs(f.b(1) - std::complex<double>(0.0, -bmag)) < 1e-10);
    CHECK(std::abs(f.b(-1) - std::conj(f.b(1))) < 1e-14);
    CHECK_FALSE(f.aliasing_warning);
  }
}

TEST_CASE("parseval identity for the fourier rows") {
  auto model = make_quartic_well(0.25);
  std::vector<double> grid{0.4, 1.1, 2.7};
  const auto chart = build_chart(*model, grid, 256);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const OrbitFourier f = chart.fourier(i, 127);
    double sum_sq = f.a0_residual * f.a0_residual;
    for (int n = -127; n <= 127; ++n) sum_sq += std::norm(f.a(n));
    double table_sq = 0.0;
    for (double av : chart.a_row(i)) table_sq += av * av;
    table_sq /= chart.n_theta();
    CHECK(std::abs(sum_sq - table_sq) / table_sq < 1e-8);
  }
}

TEST_CASE("small-action bounds on the quartic chart") {
  auto model = make_quartic_well(0.25);
  // lowest decade of the default grid plus the decade above for the fit
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i)
    grid.push_back(M_PI * 1e-3 * std::pow(100.0, i / 16.0));
  const auto chart = build_chart(*model, grid, 128);
  std::vector<double> ratio_a;   // max|a| / sqrt(I)
  std::vector<double> ratio_da;  // max|dI a| * sqrt(I)
  for (std::size_t i = 1; i + 1 < chart.I_grid().size(); ++i) {
    const double I = chart.I_grid()[i];
    double max_a = 0.0, max_da = 0.0;
    for (int j = 0; j < chart.n_theta(); ++j) {
      max_a = std::max(max_a, std::abs(chart.a_row(i)[j]));
      const double da = (chart.a_row(i + 1)[j] - chart.a_row(i - 1)[j]) /
                        (chart.I_grid()[i + 1] - chart.I_grid()[i - 1]);
      max_da = std::max(max_da, std::abs(da));
    }
    ratio_a.push_back(max_a / std::sqrt(I));
    ratio_da.push_back(max_da * std::sqrt(I));
  }
  // the ratios stay within a factor 2 across the small-action rows
  const auto [amin, amax] = std::minmax_element(ratio_a.begin(), ratio_a.end());
  const auto [dmin, dmax] =
      std::minmax_element(ratio_da.begin(), ratio_da.end());
  CHECK(*amax / *amin < 2.0);
  CHECK(*dmax / *dmin < 2.0);
}

TEST_CASE("chart construction rejects bad grids") {
  auto model = make_quadratic();
  CHECK_THROWS_AS(build_chart(*model, {1.0, 0.5}, 64), parameter_error);
  CHECK_THROWS_AS(build_chart(*model, {-1.0, 0.5}, 64), parameter_error);
  CHECK_THROWS_AS(build_chart(*model, {0.5, 1.0}, 48), parameter_error);
  CHECK_THROWS_AS(build_chart(*model, {0.5, 1.0}, 100), parameter_error);
}

TEST_SUITE_END();
