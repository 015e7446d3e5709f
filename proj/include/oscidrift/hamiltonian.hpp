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

#ifndef OSCIDRIFT_HAMILTONIAN_HPP_
#define OSCIDRIFT_HAMILTONIAN_HPP_

#include <array>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "oscidrift/interp.hpp"

namespace oscidrift {

using Vec2 = std::array<double, 2>;

// One-degree-of-freedom Hamiltonian with a single non-degenerate minimum at
// the origin, H(0,0) = 0.  All level sets {H = E}, E > 0, are closed orbits
// of the flow dX/dt = (dH/dy, -dH/dx).
class HamiltonianModel {
 public:
  virtual ~HamiltonianModel() = default;

  virtual double value(double x, double y) const = 0;
  virtual double dx(double x, double y) const = 0;
  virtual double dy(double x, double y) const = 0;
  // row-major {Hxx, Hxy, Hyx, Hyy} at the origin
  virtual std::array<double, 4> hessian_at_origin() const = 0;
  virtual bool is_quadratic() const { return false; }
  // H = y^2/2 + U(x); enables the splitting integrator
  virtual bool is_mechanical() const { return false; }
  virtual double potential_force(double /*x*/) const { return 0.0; }
  virtual std::string name() const = 0;

  Vec2 grad(double x, double y) const { return {dx(x, y), dy(x, y)}; }
  // validates minimum, Hessian positive-definiteness and growth along rays
  void check_single_well() const;
};

std::unique_ptr<HamiltonianModel> make_quadratic();
// H = y^2/2 + x^2/2 + c4 x^4
std::unique_ptr<HamiltonianModel> make_quartic_well(double c4);

// --- orbit machinery -------------------------------------------------------

struct OrbitData {
  double energy = 0.0;
  double period = 0.0;
  double action = 0.0;            // contour integral of y dx = enclosed area
  std::vector<Vec2> points;       // orbit samples at times j T / N
};

// I(E): area enclosed by {H = E}, by orbit integration with
// return-to-section detection on {x = 0, y < 0}.
double action_of_energy(const HamiltonianModel& model, double energy);

// inverse of action_of_energy (Newton on E with dI/dE = period)
double energy_of_action(const HamiltonianModel& model, double action);

// period, action and (optionally) n_samples uniform-in-time orbit points
OrbitData trace_orbit(const HamiltonianModel& model, double energy,
                      int n_samples);

// Angle of a phase-space point: the elapsed fraction of its own orbit's
// period since the last crossing of {x = 0, y < 0}; in [0, 1).
double orbit_angle(const HamiltonianModel& model, const Vec2& point);

// --- action-angle chart -----------------------------------------------------

// Fourier data of one chart row: a_n, b_n for |n| <= N, with a_0 forced to
// zero (a is mean-free in the angle).
struct OrbitFourier {
  double action = 0.0;
  int max_order = 0;
  std::vector<std::complex<double>> a_coeffs;  // index n+N
  std::vector<std::complex<double>> b_coeffs;
  double a0_residual = 0.0;  // |raw mean of a| before zeroing
  bool aliasing_warning = false;

  std::complex<double> a(int n) const { return a_coeffs[n + max_order]; }
  std::complex<double> b(int n) const { return b_coeffs[n + max_order]; }
};

class ActionAngleChart {
 public:
  ActionAngleChart() = default;

  const std::vector<double>& I_grid() const { return I_grid_; }
  const std::vector<double>& K_values() const { return K_; }
  const std::vector<double>& omega_values() const { return omega_; }
  int n_theta() const { return n_theta_; }
  double omega0() const { return omega0_; }

  const std::vector<Vec2>& orbit(std::size_t row) const { return orbits_[row]; }
  const std::vector<double>& a_row(std::size_t row) const { return a_[row]; }
  const std::vector<double>& b_row(std::size_t row) const { return b_[row]; }
  double mean_b_row(std::size_t row) const { return mean_b_[row]; }

  double K_of_I(double I) const { return K_interp_(I); }
  double omega_of_I(double I) const { return omega_interp_(I); }
  double omega_prime(double I) const { return omega_interp_.derivative(I); }
  double I_of_E(double E) const { return I_of_E_interp_(E); }
  double mean_b(double I) const { return mean_b_interp_(I); }
  double I_min() const { return I_grid_.front(); }
  double I_max() const { return I_grid_.back(); }

  std::size_t row_of(double I) const;  // exact grid membership or throws

  OrbitFourier fourier(std::size_t row, int order) const;

 private:
  friend ActionAngleChart build_chart(const HamiltonianModel&,
                                      const std::vector<double>&, int, bool);
  void finalize();

  std::vector<double> I_grid_, K_, omega_, mean_b_;
  std::vector<std::vector<Vec2>> orbits_;
  std::vector<std::vector<double>> a_, b_;
  int n_theta_ = 0;
  double omega0_ = 0.0;
  interp::Pchip K_interp_, omega_interp_, I_of_E_interp_, mean_b_interp_;
};

// Builds the per-action tables.  The gauge puts theta = 0 at the orbit's
// crossing of {x = 0, y < 0}, with theta advancing along the flow, matching
// the closed forms of the quadratic example.  force_numeric bypasses the
// analytic quadratic fast path (used to validate the orbit machinery).
ActionAngleChart build_chart(const HamiltonianModel& model,
                             const std::vector<double>& I_grid, int n_theta,
                             bool force_numeric = false);

// default grid: log-spaced near zero, then linear, 48 points over
// [1e-3, 20] * (2 pi E_ref)
std::vector<double> default_action_grid(double E_ref = 0.5, int n_points = 48);

}  // namespace oscidrift

#endif  // OSCIDRIFT_HAMILTONIAN_HPP_
