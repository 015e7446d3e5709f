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

#include "oscidrift/hamiltonian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <thread>

#include <boost/numeric/odeint.hpp>

#include "oscidrift/errors.hpp"

namespace oscidrift {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

class Quadratic final : public HamiltonianModel {
 public:
  double value(double x, double y) const override {
    return 0.5 * (x * x + y * y);
  }
  double dx(double x, double) const override { return x; }
  double dy(double, double y) const override { return y; }
  std::array<double, 4> hessian_at_origin() const override {
    return {1.0, 0.0, 0.0, 1.0};
  }
  bool is_quadratic() const override { return true; }
  bool is_mechanical() const override { return true; }
  double potential_force(double x) const override { return x; }
  std::string name() const override { return "quadratic"; }
};

class QuarticWell final : public HamiltonianModel {
 public:
  explicit QuarticWell(double c4) : c4_(c4) {
    if (!(c4 > 0.0)) throw parameter_error("quartic_well: c4 must be > 0");
  }
  double value(double x, double y) const override {
    return 0.5 * y * y + 0.5 * x * x + c4_ * x * x * x * x;
  }
  double dx(double x, double) const override {
    return x + 4.0 * c4_ * x * x * x;
  }
  double dy(double, double y) const override { return y; }
  std::array<double, 4> hessian_at_origin() const override {
    return {1.0, 0.0, 0.0, 1.0};
  }
  bool is_mechanical() const override { return true; }
  double potential_force(double x) const override { return dx(x, 0.0); }
  std::string name() const override { return "quartic_well"; }

 private:
  double c4_;
};

}  // namespace

void HamiltonianModel::check_single_well() const {
  if (std::abs(value(0.0, 0.0)) > 1e-12)
    throw model_error("Hamiltonian: H(0,0) must vanish");
  if (std::abs(dx(0.0, 0.0)) > 1e-10 || std::abs(dy(0.0, 0.0)) > 1e-10)
    throw model_error("Hamiltonian: gradient at the origin must vanish");
  const auto h = hessian_at_origin();
  if (!(h[0] > 0.0 && h[0] * h[3] - h[1] * h[2] > 0.0))
    throw model_error("Hamiltonian: Hessian at origin not positive definite");
  // growth along rays so level sets close up
  for (int k = 0; k < 16; ++k) {
    const double phi = kTwoPi * k / 16.0;
    const double c = std::cos(phi), s = std::sin(phi);
    const double h10 = value(10.0 * c, 10.0 * s);
    const double h100 = value(100.0 * c, 100.0 * s);
    if (!(h10 > 0.0) || !(h100 > h10))
      throw model_error("Hamiltonian: not increasing along ray " +
                        std::to_string(k));
  }
}

std::unique_ptr<HamiltonianModel> make_quadratic() {
  auto m = std::make_unique<Quadratic>();
  m->check_single_well();
  return m;
}

std::unique_ptr<HamiltonianModel> make_quartic_well(double c4) {
  auto m = std::make_unique<QuarticWell>(c4);
  m->check_single_well();
  return m;
}

// --- orbit integration ------------------------------------------------------

namespace {

namespace ode = boost::numeric::odeint;

// state: (x, y, accumulated contour integral of y dx)
using State3 = std::array<double, 3>;

struct FlowSystem {
  const HamiltonianModel* model;
  void operator()(const State3& s, State3& dsdt, double) const {
    const double gy = model->dy(s[0], s[1]);
    dsdt[0] = gy;
    dsdt[1] = -model->dx(s[0], s[1]);
    dsdt[2] = s[1] * gy;  // y dx/dt
  }
};

using PlainStepper = ode::runge_kutta_fehlberg78<State3>;

struct Crossing {
  double time;
  State3 state;
};

// The section is {x = 0, y < 0}; the flow pierces it with x decreasing.
// Integrates from `start` and returns the first n_crossings hits.
class OrbitTracker {
 public:
  OrbitTracker(const HamiltonianModel& model, double tol = 1e-12)
      : system_{&model},
        controlled_(ode::make_controlled<PlainStepper>(tol, tol)) {}

  // advance to time `target`, accumulating crossings along the way
  void run_until(double target) {
    while (t_ < target) {
      step_to(target);
    }
  }

  // integrate until `count` crossings were seen (or throw past t_max)
  void run_until_crossings(std::size_t count, double t_max) {
    while (crossings_.size() < count) {
      if (t_ >= t_max)
        throw model_error(
            "orbit did not return to the section: open orbit or period "
            "beyond t_max");
      step_to(t_max);
    }
  }

  void reset(const State3& s) {
    state_ = s;
    t_ = 0.0;
    dt_ = 1e-3;
    crossings_.clear();
  }

  const State3& state() const { return state_; }
  double time() const { return t_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }

 private:
  void step_to(double limit) {
    State3 prev = state_;
    double t_prev = t_;
    // step cap keeps a single step from straddling both section crossings
    double dt = std::min({dt_, limit - t_, 0.25});
    if (dt <= 0.0) return;
    ode::controlled_step_result res;
    int guard = 0;
    do {
      res = controlled_.try_step(system_, state_, t_, dt);
      if (res == ode::fail && ++guard > 200)
        throw numeric_error("orbit integrator: step size underflow");
    } while (res == ode::fail);
    dt_ = dt;  // accepted: try_step left the next suggestion here
    if (prev[0] > 0.0 && state_[0] <= 0.0 && state_[1] < 0.0)
      refine_crossing(prev, t_prev, t_ - t_prev);
  }

  // bisection for the crossing time inside [t_prev, t_prev + dt]
  void refine_crossing(const State3& base, double t_base, double dt) {
    PlainStepper plain;
    auto x_at = [&](double tau) {
      if (tau <= 0.0) return base[0];
      State3 s = base;
      plain.do_step(system_, s, 0.0, tau);
      return s[0];
    };
    double lo = 0.0, hi = dt;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (x_at(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-15 * std::max(1.0, t_base + dt)) break;
    }
    const double tau = 0.5 * (lo + hi);
    State3 s = base;
    if (tau > 0.0) plain.do_step(system_, s, 0.0, tau);
    crossings_.push_back({t_base + tau, s});
  }

  FlowSystem system_;
  decltype(ode::make_controlled<PlainStepper>(1e-12, 1e-12)) controlled_;
  State3 state_{};
  double t_ = 0.0;
  double dt_ = 1e-3;
  std::vector<Crossing> crossings_;
};

constexpr double kMaxOrbitTime = 1e5;

// starting point of the orbit {H = E} on the section: solve H(0, y) = E,
// y < 0, by bisection on the lower semi-axis
Vec2 section_point(const HamiltonianModel& model, double energy) {
  if (!(energy > 0.0)) throw parameter_error("orbit energy must be > 0");
  double hi = -std::sqrt(2.0 * energy);  // exact for mechanical H
  if (model.value(0.0, hi) == energy) return {0.0, hi};
  double lo = 0.0;
  int guard = 0;
  while (model.value(0.0, hi) < energy) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw model_error("cannot bracket H(0,y) = E on y < 0");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (model.value(0.0, mid) < energy)
      lo = mid;
    else
      hi = mid;
  }
  return {0.0, 0.5 * (lo + hi)};
}

struct PeriodResult {
  double period;
  double action;
  Vec2 start;
};

PeriodResult find_period(const HamiltonianModel& model, double energy) {
  const Vec2 start = section_point(model, energy);
  OrbitTracker tracker(model);
  tracker.reset({start[0], start[1], 0.0});
  tracker.run_until_crossings(1, kMaxOrbitTime);
  const Crossing c = tracker.crossings()[0];
  return {c.time, c.state[2], start};
}

}  // namespace

double action_of_energy(const HamiltonianModel& model, double energy) {
  return find_period(model, energy).action;
}

double energy_of_action(const HamiltonianModel& model, double action) {
  if (!(action > 0.0)) throw parameter_error("action must be > 0");
  const auto hess = model.hessian_at_origin();
  const double omega_harmonic = std::sqrt(hess[0] * hess[3] - hess[1] * hess[2]);
  double e = action * omega_harmonic / kTwoPi;  // harmonic first guess
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    PeriodResult pr = find_period(model, e);
    const double f = pr.action - action;
    if (std::abs(f) <= 1e-13 * action) return e;
    if (f > 0.0)
      hi = e;
    else
      lo = e;
    double e_next = e - f / pr.period;  // dI/dE = T
    if (!(e_next > lo && (hi == std::numeric_limits<double>::infinity() ||
                          e_next < hi)))
      e_next = (hi == std::numeric_limits<double>::infinity()) ? 2.0 * e
                                                               : 0.5 * (lo + hi);
    e = e_next;
  }
  throw numeric_error("energy_of_action: K inversion failed to bracket");
}

OrbitData trace_orbit(const HamiltonianModel& model, double energy,
                      int n_samples) {
  PeriodResult pr = find_period(model, energy);
  OrbitData data;
  data.energy = energy;
  data.period = pr.period;
  data.action = pr.action;
  if (n_samples <= 0) return data;
  data.points.resize(n_samples);
  OrbitTracker tracker(model);
  tracker.reset({pr.start[0], pr.start[1], 0.0});
  for (int j = 0; j < n_samples; ++j) {
    const double target = pr.period * j / n_samples;
    tracker.run_until(target);
    data.points[j] = {tracker.state()[0], tracker.state()[1]};
  }
  return data;
}

double orbit_angle(const HamiltonianModel& model, const Vec2& point) {
  const double energy = model.value(point[0], point[1]);
  if (!(energy > 0.0))
    throw parameter_error("orbit_angle: point must lie off the minimum");
  OrbitTracker tracker(model);
  tracker.reset({point[0], point[1], 0.0});
  tracker.run_until_crossings(2, kMaxOrbitTime);
  const double t1 = tracker.crossings()[0].time;
  const double t2 = tracker.crossings()[1].time;
  const double period = t2 - t1;
  double theta = 1.0 - t1 / period;
  theta -= std::floor(theta);
  return theta;
}

// --- chart ------------------------------------------------------------------

std::size_t ActionAngleChart::row_of(double I) const {
  for (std::size_t i = 0; i < I_grid_.size(); ++i)
    if (std::abs(I_grid_[i] - I) <= 1e-12 * std::max(1.0, std::abs(I)))
      return i;
  throw parameter_error("action value is not on the chart grid");
}

OrbitFourier ActionAngleChart::fourier(std::size_t row, int order) const {
  if (row >= I_grid_.size()) throw parameter_error("fourier: bad row index");
  if (order < 1 || 2 * order > n_theta_)
    throw parameter_error("fourier: order must satisfy 1 <= N <= n_theta/2");
  OrbitFourier f;
  f.action = I_grid_[row];
  f.max_order = order;
  f.a_coeffs.resize(2 * order + 1);
  f.b_coeffs.resize(2 * order + 1);
  const auto& arow = a_[row];
  const auto& brow = b_[row];
  const int N = n_theta_;
  for (int n = -order; n <= order; ++n) {
    std::complex<double> sa = 0.0, sb = 0.0;
    for (int j = 0; j < N; ++j) {
      const double phase = -kTwoPi * n * j / N;
      const std::complex<double> e(std::cos(phase), std::sin(phase));
      sa += arow[j] * e;
      sb += brow[j] * e;
    }
    f.a_coeffs[n + order] = sa / double(N);
    f.b_coeffs[n + order] = sb / double(N);
  }
  f.a0_residual = std::abs(f.a_coeffs[order]);
  f.a_coeffs[order] = 0.0;  // a is mean-free in theta
  double max_a = 0.0;
  for (const auto& c : f.a_coeffs) max_a = std::max(max_a, std::abs(c));
  f.aliasing_warning = std::abs(f.a_coeffs[2 * order]) > 1e-3 * max_a;
  return f;
}

void ActionAngleChart::finalize() {
  const std::size_t n = I_grid_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(K_[i + 1] > K_[i]))
      throw model_error("chart: K(I) is not increasing on the grid");
    if (!(omega_[i] > 0.0))
      throw model_error("chart: nonpositive frequency on the grid");
  }
  mean_b_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double bv : b_[i]) s += bv;
    mean_b_[i] = s / b_[i].size();
  }
  double omega_min = omega_[0];
  for (double w : omega_) omega_min = std::min(omega_min, w);
  omega0_ = 0.5 * omega_min;
  K_interp_ = interp::Pchip(I_grid_, K_);
  omega_interp_ = interp::Pchip(I_grid_, omega_);
  I_of_E_interp_ = interp::Pchip(K_, I_grid_);
  mean_b_interp_ = interp::Pchip(I_grid_, mean_b_);
}

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void build_row_quadratic(double I, int n_theta, std::vector<Vec2>& orbit,
                         std::vector<double>& a, std::vector<double>& b) {
  const double y0 = std::sqrt(I / M_PI);
  const double sq = 2.0 * std::sqrt(M_PI * I);
  orbit.resize(n_theta);
  a.resize(n_theta);
  b.resize(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    const double th = kTwoPi * j / n_theta;
    orbit[j] = {-y0 * std::sin(th), -y0 * std::cos(th)};
    a[j] = -sq * std::cos(th);
    b[j] = std::sin(th) / sq;
  }
}

void build_row_numeric(const HamiltonianModel& model, double I, int n_theta,
                       double& K_out, double& omega_out,
                       std::vector<Vec2>& orbit, std::vector<double>& a,
                       std::vector<double>& b) {
  const double E = energy_of_action(model, I);
  OrbitData od = trace_orbit(model, E, n_theta);
  K_out = E;
  omega_out = 1.0 / od.period;
  orbit = od.points;
  a.resize(n_theta);
  b.resize(n_theta);
  double scale = 0.0;
  for (const auto& p : od.points)
    scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double h = 1e-5 * scale;
  for (int j = 0; j < n_theta; ++j) {
    const auto& p = od.points[j];
    a[j] = model.dy(p[0], p[1]) * od.period;
    // d(theta)/dy by centered difference of the angle map
    const double theta_j = double(j) / n_theta;
    double tp = orbit_angle(model, {p[0], p[1] + h});
    double tm = orbit_angle(model, {p[0], p[1] - h});
    // align both angles with the branch nearest theta_j
    tp -= std::round(tp - theta_j);
    tm -= std::round(tm - theta_j);
    b[j] = (tp - tm) / (2.0 * h);
  }
}

}  // namespace

ActionAngleChart build_chart(const HamiltonianModel& model,
                             const std::vector<double>& I_grid, int n_theta,
                             bool force_numeric) {
  if (I_grid.size() < 2)
    throw parameter_error("build_chart: grid needs at least two actions");
  for (std::size_t i = 0; i < I_grid.size(); ++i) {
    if (!(I_grid[i] > 0.0))
      throw parameter_error("build_chart: actions must be positive");
    if (i > 0 && !(I_grid[i] > I_grid[i - 1]))
      throw parameter_error("build_chart: grid must be strictly increasing");
  }
  if (n_theta < 64 || !is_power_of_two(n_theta))
    throw parameter_error("build_chart: n_theta must be a power of two >= 64");

  ActionAngleChart chart;
  chart.I_grid_ = I_grid;
  chart.n_theta_ = n_theta;
  const std::size_t n = I_grid.size();
  chart.K_.resize(n);
  chart.omega_.resize(n);
  chart.orbits_.resize(n);
  chart.a_.resize(n);
  chart.b_.resize(n);

  if (model.is_quadratic() && !force_numeric) {
    for (std::size_t i = 0; i < n; ++i) {
      chart.K_[i] = I_grid[i] / kTwoPi;
      chart.omega_[i] = 1.0 / kTwoPi;
      build_row_quadratic(I_grid[i], n_theta, chart.orbits_[i], chart.a_[i],
                          chart.b_[i]);
    }
    chart.finalize();
    return chart;
  }

  // rows are independent; build them on a small worker pool
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        build_row_numeric(model, I_grid[i], n_theta, chart.K_[i],
                          chart.omega_[i], chart.orbits_[i], chart.a_[i],
                          chart.b_[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  for (unsigned k = 0; k < hw; ++k)
    jobs.push_back(std::async(std::launch::async, worker));
  for (auto& j : jobs) j.get();
  if (first_error) std::rethrow_exception(first_error);

  chart.finalize();
  return chart;
}

std::vector<double> default_action_grid(double E_ref, int n_points) {
  const double scale = kTwoPi * E_ref;
  const double lo = 1e-3 * scale, mid = 0.5 * scale, hi = 20.0 * scale;
  const int n_log = n_points / 3;
  const int n_lin = n_points - n_log;
  std::vector<double> grid;
  grid.reserve(n_points);
  for (int i = 0; i < n_log; ++i)
    grid.push_back(lo * std::pow(mid / lo, double(i) / n_log));
  for (int i = 0; i < n_lin; ++i)
    grid.push_back(mid + (hi - mid) * double(i) / (n_lin - 1));
  return grid;
}

}  // namespace oscidrift
