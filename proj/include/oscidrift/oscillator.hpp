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

#ifndef OSCIDRIFT_OSCILLATOR_HPP_
#define OSCIDRIFT_OSCILLATOR_HPP_

#include <vector>

#include "oscidrift/hamiltonian.hpp"
#include "oscidrift/noise.hpp"
#include "oscidrift/rng.hpp"

namespace oscidrift {

// Run parameters for one trajectory of the forced oscillator.  The equation
// is integrated in fast time (horizon T / epsilon^2) in its unscaled form
// dX/dt = rot-grad H + epsilon v(t) e2, so the noise stepping has constant
// coefficients and no stiff terms enter the integrator.
struct SimConfig {
  double epsilon = 0.1;
  double T = 1.0;                    // slow-time horizon
  double dt_fast = 0.031415926535897932;  // 200 steps per harmonic period
  const HamiltonianModel* model = nullptr;
  const NoiseDiscretization* disc = nullptr;
  double x0 = 0.0;
  double y0 = 1.0;
  int record_stride = 4;
  bool zero_noise = false;   // v = 0: conservative flow (test path)
  double min_period = 6.283185307179586;  // fastest orbit period expected

  void validate() const;
};

struct TrajectoryRecord {
  std::vector<double> times;  // slow time
  std::vector<double> x, y;
  std::vector<double> H_vals;
  std::vector<double> v_vals;  // noise value used at the recorded step
  std::vector<double> w1, w2;  // quadratic runs only, else empty
  std::vector<double> I_vals, theta_vals, psi_vals, tau_vals;  // split_angle
  double dt_fast_actual = 0.0;
  double epsilon = 0.0;
};

TrajectoryRecord integrate_rescaled(const SimConfig& cfg, rng::Stream& rng);

// Computes (I, theta) along the recorded path through the chart, integrates
// the fast angle tau, and splits theta = psi + tau with psi unwrapped.
void split_angle(TrajectoryRecord& traj, const ActionAngleChart& chart,
                 const HamiltonianModel& model);

struct WPaths {
  std::vector<double> times;  // actual slow-time snapshots
  std::vector<double> w1, w2;
};

// w1(t) = (1/eps) \int_0^t v(s/eps^2) sin(s/eps^2) ds and the cosine
// counterpart, by trapezoid on the fast grid with exactly-stepped noise.
WPaths oscillatory_integrals(const NoiseDiscretization& disc, double eps,
                             const std::vector<double>& t_grid,
                             rng::Stream& rng,
                             double dt_fast = 0.031415926535897932);

}  // namespace oscidrift

#endif  // OSCIDRIFT_OSCILLATOR_HPP_
