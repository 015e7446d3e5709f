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

#ifndef OSCIDRIFT_LIMIT_SDE_HPP_
#define OSCIDRIFT_LIMIT_SDE_HPP_

#include <complex>
#include <utility>
#include <vector>

#include "oscidrift/hamiltonian.hpp"
#include "oscidrift/interp.hpp"
#include "oscidrift/noise.hpp"
#include "oscidrift/rng.hpp"

namespace oscidrift {

struct DMatrix {
  double D11 = 0.0;
  double D12 = 0.0;  // zero by construction
};

// D11 = \int_0^inf R(z) cos z dz, evaluated per OU mode in closed form:
// \int_S r(p) A(p) / (A(p)^2 + 1) dp with A = mu |p|^{2 beta}.
DMatrix d_matrix(const SpectralDensity& density);

// R_n = 2 \int_0^inf R(u) cos(2 pi n omega u) du, again with the u-integral
// closed per mode.  n = 0 diverges for this noise family.
double r_n(const SpectralDensity& density, double omega, int n);

// Diffusion and drift data of the limiting (I, psi) system on an action
// grid, plus the energy-space coefficients Sigma, Lambda of the generator
// for H(X).  m = pi * D11 is the quadratic-Hamiltonian diffusion constant.
struct LimitCoeffs {
  std::vector<double> I_grid;
  std::vector<double> K;      // energies K(I)
  std::vector<double> omega;  // frequencies
  std::vector<double> a_bold;      // action diffusion  sum |a_n|^2 R_n
  std::vector<double> b_bold;      // action drift      (1/2) d a_bold / dI
  std::vector<double> b_tilde;     // angle diffusion   sum |b_n|^2 R_n
  std::vector<double> c_cross;     // I-psi noise covariance
  std::vector<double> b_psi;       // angle drift (both pieces below summed)
  std::vector<double> b_psi_dI;    //   coefficient-derivative part
  std::vector<double> b_psi_res;   //   omega'(I) resonance part
  std::vector<double> Sigma;       // line-integral route, on X = K(I)
  std::vector<double> Lambda;
  double D11 = 0.0;
  double m = 0.0;
  int fourier_order = 0;

  double a_bold_of(double I) const { return a_interp_(I); }
  double b_bold_of(double I) const { return b_interp_(I); }
  double b_tilde_of(double I) const { return btil_interp_(I); }
  double c_cross_of(double I) const { return c_interp_(I); }
  double b_psi_of(double I) const { return bpsi_interp_(I); }
  double I_min() const { return I_grid.front(); }
  double I_max() const { return I_grid.back(); }

  void build_interpolants();

 private:
  interp::Pchip a_interp_, b_interp_, btil_interp_, c_interp_, bpsi_interp_;
};

// Fourier-sum route (coefficients a_n, b_n of the chart rows against the
// mode-exact kernels).  The truncation order doubles automatically until
// the tail share of a_bold falls below tail_tol, up to n_theta/2.
LimitCoeffs fourier_coefficients_route(const ActionAngleChart& chart,
                                       const SpectralDensity& density,
                                       const NoiseDiscretization& disc,
                                       int initial_order = 32,
                                       double tail_tol = 1e-6);

// Line-integral route: Sigma from the orbit autocorrelation of dH/dy folded
// against each OU kernel (periodic tail summed in closed form), Lambda from
// the orbit geometry.  Fills coeffs.Sigma / coeffs.Lambda on X = K(I_grid).
void line_integral_route(const HamiltonianModel& model,
                         const ActionAngleChart& chart,
                         const NoiseDiscretization& disc, LimitCoeffs& coeffs,
                         int n_samples = 1024);

// scale function p(x) = \int_1^x exp(-2 \int_1^xi b/a) dxi
double scale_function(const LimitCoeffs& coeffs, double x);

// (P[hit x_minus first], P[hit x_plus first]) from I0
std::pair<double, double> exit_probability(const LimitCoeffs& coeffs,
                                           double x_minus, double x_plus,
                                           double I0);

struct JointPath {
  std::vector<double> t;
  std::vector<double> I;
  std::vector<double> psi;
  long reflections = 0;
  bool truncated = false;  // left the coefficient table
};

// Euler-Maruyama for the coupled (I, psi) limit with the 2x2 covariance
// [[a, c], [c, b_tilde]] refactored by Cholesky each step.  I is kept
// positive by reflection at `floor`, with every event counted.
JointPath simulate_limit_joint(const LimitCoeffs& coeffs, double I0,
                               double psi0, double T, double dt,
                               rng::Stream& rng, double floor = 1e-8,
                               bool allow_low_grid = false);

// Exact-in-law transition sampling of the quadratic-Hamiltonian action
// limit: I/m is a squared Bessel process of dimension 2.
std::vector<double> simulate_bessel_exact(double m, double I0,
                                          const std::vector<double>& t_grid,
                                          rng::Stream& rng);

}  // namespace oscidrift

#endif  // OSCIDRIFT_LIMIT_SDE_HPP_
