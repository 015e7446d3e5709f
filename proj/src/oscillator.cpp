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

#include "oscidrift/oscillator.hpp"

#include <cmath>

#include "oscidrift/errors.hpp"

namespace oscidrift {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// exact rotation of the quadratic flow: d/dt (x,y) = (y, -x)
inline void rotate(double& x, double& y, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const double xn = c * x + s * y;
  y = -s * x + c * y;
  x = xn;
}

// kick-drift-kick leapfrog for H = y^2/2 + U(x)
inline void leapfrog(const HamiltonianModel& m, double& x, double& y,
                     double h) {
  y -= 0.5 * h * m.potential_force(x);
  x += h * y;
  y -= 0.5 * h * m.potential_force(x);
}

// Yoshida's 6th-order composition (solution A); keeps the unforced energy
// drift far below the 1e-8 per-period contract at the default step.
inline void flow_step(const HamiltonianModel& m, double& x, double& y,
                      double h) {
  if (m.is_quadratic()) {
    rotate(x, y, h);
    return;
  }
  static const double w1 = -1.17767998417887, w2 = 0.235573213359357,
                      w3 = 0.784513610477560;
  static const double w0 = 1.0 - 2.0 * (w1 + w2 + w3);
  const double ws[7] = {w3, w2, w1, w0, w1, w2, w3};
  for (double w : ws) leapfrog(m, x, y, w * h);
}

}  // namespace

void SimConfig::validate() const {
  if (model == nullptr) throw config_error("SimConfig: missing model");
  if (disc == nullptr && !zero_noise)
    throw config_error("SimConfig: missing noise discretization");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw config_error("SimConfig: epsilon must lie in (0,1)");
  if (!(T > 0.0)) throw config_error("SimConfig: T must be > 0");
  if (!(dt_fast > 0.0)) throw config_error("SimConfig: dt_fast must be > 0");
  if (dt_fast > 0.1 * std::min(1.0, min_period))
    throw config_error(
        "SimConfig: dt_fast too large to resolve the fastest oscillation");
  if (record_stride < 1)
    throw config_error("SimConfig: record_stride must be >= 1");
  if (!model->is_quadratic() && !model->is_mechanical())
    throw config_error(
        "SimConfig: splitting integrator needs a mechanical Hamiltonian");
}

TrajectoryRecord integrate_rescaled(const SimConfig& cfg, rng::Stream& rng) {
  cfg.validate();
  const HamiltonianModel& model = *cfg.model;
  const double eps = cfg.epsilon;
  const double t_fast_end = cfg.T / (eps * eps);
  const long n_steps = std::max(1l, std::lround(t_fast_end / cfg.dt_fast));
  const double h = t_fast_end / n_steps;
  const bool quadratic = model.is_quadratic();

  TrajectoryRecord rec;
  rec.epsilon = eps;
  rec.dt_fast_actual = h;
  const long n_rec = n_steps / cfg.record_stride + 1;
  rec.times.reserve(n_rec);
  rec.x.reserve(n_rec);
  rec.y.reserve(n_rec);
  rec.H_vals.reserve(n_rec);
  rec.v_vals.reserve(n_rec);
  if (quadratic) {
    rec.w1.reserve(n_rec);
    rec.w2.reserve(n_rec);
  }

  NoiseState noise;
  const NoiseStepper* stepper = nullptr;
  NoiseStepper stepper_storage =
      cfg.zero_noise ? NoiseStepper(NoiseDiscretization{}, h)
                     : NoiseStepper(*cfg.disc, h);
  if (!cfg.zero_noise) {
    noise = init_stationary(*cfg.disc, rng);
    stepper = &stepper_storage;
  }

  double x = cfg.x0, y = cfg.y0;
  double w1 = 0.0, w2 = 0.0;

  auto record = [&](long step, double v_now) {
    rec.times.push_back(eps * eps * h * step);
    rec.x.push_back(x);
    rec.y.push_back(y);
    rec.H_vals.push_back(model.value(x, y));
    rec.v_vals.push_back(v_now);
    if (quadratic) {
      rec.w1.push_back(w1);
      rec.w2.push_back(w2);
    }
  };

  double v = cfg.zero_noise ? 0.0 : sample_v(noise);
  record(0, v);
  for (long n = 0; n < n_steps; ++n) {
    const double s = h * n;
    // Strang split: half flow, noise kick with v held over the step, half flow
    flow_step(model, x, y, 0.5 * h);
    y += eps * v * h;
    flow_step(model, x, y, 0.5 * h);
    if (!std::isfinite(x) || !std::isfinite(y))
      throw integration_failure("trajectory became non-finite",
                                eps * eps * s);
    if (stepper) stepper->advance(noise, rng);
    const double v_next = cfg.zero_noise ? 0.0 : sample_v(noise);
    if (quadratic) {
      // trapezoid accumulation of the rotating-frame integrals
      const double s_next = h * (n + 1);
      w1 += eps * 0.5 * h *
            (v * std::sin(s) + v_next * std::sin(s_next));
      w2 += eps * 0.5 * h *
            (v * std::cos(s) + v_next * std::cos(s_next));
    }
    v = v_next;
    if ((n + 1) % cfg.record_stride == 0 || n + 1 == n_steps) record(n + 1, v);
  }
  return rec;
}

void split_angle(TrajectoryRecord& traj, const ActionAngleChart& chart,
                 const HamiltonianModel& model) {
  const std::size_t n = traj.times.size();
  traj.I_vals.resize(n);
  traj.theta_vals.resize(n);
  traj.psi_vals.resize(n);
  traj.tau_vals.resize(n);
  const double eps = traj.epsilon;
  const double eps2 = eps * eps;

  for (std::size_t j = 0; j < n; ++j) {
    const double E = traj.H_vals[j];
    if (E < chart.K_values().front() || E > chart.K_values().back())
      throw numeric_error(
          "split_angle: trajectory energy leaves the chart coverage");
    traj.I_vals[j] = chart.I_of_E(E);
    if (model.is_quadratic()) {
      double th = std::atan2(-traj.x[j], -traj.y[j]) / kTwoPi;
      th -= std::floor(th);
      traj.theta_vals[j] = th;
    } else {
      traj.theta_vals[j] = orbit_angle(model, {traj.x[j], traj.y[j]});
    }
  }

  // tau' = omega(I)/eps^2 + v <b(I,.)> / eps, trapezoid over the records
  traj.tau_vals[0] = 0.0;
  auto rate = [&](std::size_t j) {
    return chart.omega_of_I(traj.I_vals[j]) / eps2 +
           traj.v_vals[j] * chart.mean_b(traj.I_vals[j]) / eps;
  };
  double r_prev = rate(0);
  for (std::size_t j = 1; j < n; ++j) {
    const double r_now = rate(j);
    traj.tau_vals[j] = traj.tau_vals[j - 1] + 0.5 *
                           (traj.times[j] - traj.times[j - 1]) *
                           (r_prev + r_now);
    r_prev = r_now;
  }

  // psi = theta - tau (mod 1), unwrapped continuously
  auto frac = [](double u) { return u - std::floor(u); };
  double delta_prev = frac(traj.theta_vals[0] - frac(traj.tau_vals[0]));
  traj.psi_vals[0] = traj.theta_vals[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double delta = frac(traj.theta_vals[j] - frac(traj.tau_vals[j]));
    double jump = delta - delta_prev;
    jump -= std::round(jump);
    traj.psi_vals[j] = traj.psi_vals[j - 1] + jump;
    delta_prev = delta;
  }
}

WPaths oscillatory_integrals(const NoiseDiscretization& disc, double eps,
                             const std::vector<double>& t_grid,
                             rng::Stream& rng, double dt_fast) {
  if (t_grid.empty() || t_grid.front() < 0.0)
    throw parameter_error("oscillatory_integrals: t_grid must start at >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw parameter_error("oscillatory_integrals: t_grid must increase");
  const double eps2 = eps * eps;
  const double s_end = t_grid.back() / eps2;
  const long n_steps = std::max(1l, std::lround(s_end / dt_fast));
  const double h = s_end / n_steps;

  WPaths out;
  out.times.reserve(t_grid.size());
  out.w1.reserve(t_grid.size());
  out.w2.reserve(t_grid.size());

  NoiseState noise = init_stationary(disc, rng);
  NoiseStepper stepper(disc, h);
  double w1 = 0.0, w2 = 0.0;
  std::size_t next_snap = 0;
  auto maybe_snap = [&](long step) {
    while (next_snap < t_grid.size() &&
           h * step >= t_grid[next_snap] / eps2 - 0.5 * h) {
      out.times.push_back(eps2 * h * step);
      out.w1.push_back(w1);
      out.w2.push_back(w2);
      ++next_snap;
    }
  };
  double v = sample_v(noise);
  maybe_snap(0);
  for (long n = 0; n < n_steps; ++n) {
    const double s = h * n, s_next = h * (n + 1);
    stepper.advance(noise, rng);
    const double v_next = sample_v(noise);
    w1 += eps * 0.5 * h * (v * std::sin(s) + v_next * std::sin(s_next));
    w2 += eps * 0.5 * h * (v * std::cos(s) + v_next * std::cos(s_next));
    v = v_next;
    maybe_snap(n + 1);
  }
  return out;
}

}  // namespace oscidrift
