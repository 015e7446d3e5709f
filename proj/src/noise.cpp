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

#include "oscidrift/noise.hpp"

#include <cmath>

#include "oscidrift/errors.hpp"
#include "oscidrift/quadrature.hpp"

namespace oscidrift {

SpectralDensity::SpectralDensity(double r_s, double alpha, double beta,
                                 double mu, LambdaSpec lambda)
    : r_s_(r_s), alpha_(alpha), beta_(beta), mu_(mu), lambda_(lambda) {
  if (!(r_s_ > 0.0)) throw parameter_error("SpectralDensity: r_s must be > 0");
  if (!(alpha_ > 0.0 && alpha_ < 0.5))
    throw parameter_error("SpectralDensity: alpha must lie in (0, 1/2)");
  if (!(beta_ > 0.0)) throw parameter_error("SpectralDensity: beta must be > 0");
  if (!(mu_ > 0.0)) throw parameter_error("SpectralDensity: mu must be > 0");
  if (lambda_.at_zero() == 0.0)
    throw parameter_error("SpectralDensity: lambda(0) must be nonzero");
  // lambda >= 0 on S; for the quadratic preset this is a closed-form check
  if (lambda_.kind == LambdaSpec::Kind::Quadratic &&
      1.0 + lambda_.c * r_s_ * r_s_ < 0.0)
    throw parameter_error("SpectralDensity: lambda negative inside S");
  if (lambda_.kind == LambdaSpec::Kind::Const && lambda_.value < 0.0)
    throw parameter_error("SpectralDensity: lambda negative inside S");
}

double SpectralDensity::r(double p) const {
  return lambda_(p) / std::pow(std::abs(p), 2.0 * alpha_);
}

double SpectralDensity::decay_rate(double p) const {
  return mu_ * std::pow(std::abs(p), 2.0 * beta_);
}

// With nu = 1 - 2 alpha and q = p^nu on each half-interval,
//   \int_0^{r_s} lambda(p) p^{-2 alpha} f(p) dp
//     = (1/nu) \int_0^{r_s^nu} lambda(q^{1/nu}) f(q^{1/nu}) dq,
// a bounded smooth integrand.
double SpectralDensity::covariance(double t) const {
  if (!(t >= 0.0)) throw parameter_error("covariance: t must be >= 0");
  const double nu = 1.0 - 2.0 * alpha_;
  const double qmax = std::pow(r_s_, nu);
  auto integrand = [&](double q) {
    const double p = std::pow(q, 1.0 / nu);
    return lambda_(p) * std::exp(-decay_rate(p) * t);
  };
  const double half = quadrature::integrate(integrand, 0.0, qmax, 1e-13, 1e-15);
  return 2.0 * half / nu;
}

double SpectralDensity::c0() const {
  const double g = gamma();
  return lambda_.at_zero() * std::tgamma(g) * std::pow(mu_, -g) / beta_;
}

GammaExponent gamma_exponent(const SpectralDensity& density) {
  return {density.gamma(), density.hurst(), density.fbm_renormalizable()};
}

double NoiseDiscretization::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double NoiseDiscretization::reconstructed_covariance(double t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    s += weights[k] * std::exp(-decay_rates[k] * t);
  return s;
}

NoiseDiscretization discretize_spectrum(const SpectralDensity& density,
                                        int n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0)
    throw parameter_error("discretize_spectrum: n_modes must be even and >= 2");
  const double nu = 1.0 - 2.0 * density.alpha();
  const double qmax = std::pow(density.r_s(), nu);
  const auto rule = quadrature::gauss_legendre(n_modes / 2, 0.0, qmax);

  NoiseDiscretization disc;
  disc.nodes.reserve(n_modes);
  disc.weights.reserve(n_modes);
  disc.decay_rates.reserve(n_modes);
  // negative half first, mirroring the positive nodes, so the set is
  // symmetric and the ordering deterministic
  for (int i = n_modes / 2 - 1; i >= 0; --i) {
    const double p = std::pow(rule.nodes[i], 1.0 / nu);
    disc.nodes.push_back(-p);
    disc.weights.push_back(rule.weights[i] * density.lambda()(p) / nu);
    disc.decay_rates.push_back(density.decay_rate(p));
  }
  for (int i = 0; i < n_modes / 2; ++i) {
    const double p = std::pow(rule.nodes[i], 1.0 / nu);
    disc.nodes.push_back(p);
    disc.weights.push_back(rule.weights[i] * density.lambda()(p) / nu);
    disc.decay_rates.push_back(density.decay_rate(p));
  }
  return disc;
}

double reconstruction_error(const SpectralDensity& density,
                            const NoiseDiscretization& disc,
                            const std::vector<double>& lags) {
  double worst = 0.0;
  for (double t : lags) {
    const double err =
        std::abs(disc.reconstructed_covariance(t) - density.covariance(t));
    if (err > worst) worst = err;
  }
  return worst;
}

NoiseState init_stationary(const NoiseDiscretization& disc, rng::Stream& rng) {
  NoiseState state;
  state.t = 0.0;
  state.modes.resize(disc.size());
  for (std::size_t k = 0; k < disc.size(); ++k)
    state.modes[k] = std::sqrt(disc.weights[k]) * rng.normal();
  return state;
}

void step(NoiseState& state, const NoiseDiscretization& disc, double dt,
          rng::Stream& rng) {
  if (!(dt > 0.0)) throw parameter_error("step: dt must be > 0");
  for (std::size_t k = 0; k < disc.size(); ++k) {
    const double decay = std::exp(-disc.decay_rates[k] * dt);
    const double sd = std::sqrt(disc.weights[k] * (1.0 - decay * decay));
    state.modes[k] = decay * state.modes[k] + sd * rng.normal();
  }
  state.t += dt;
}

double sample_v(const NoiseState& state) {
  double s = 0.0;
  for (double v : state.modes) s += v;
  return s;
}

NoiseStepper::NoiseStepper(const NoiseDiscretization& disc, double dt)
    : dt_(dt) {
  if (!(dt > 0.0)) throw parameter_error("NoiseStepper: dt must be > 0");
  decay_.resize(disc.size());
  kick_std_.resize(disc.size());
  for (std::size_t k = 0; k < disc.size(); ++k) {
    decay_[k] = std::exp(-disc.decay_rates[k] * dt);
    kick_std_[k] = std::sqrt(disc.weights[k] * (1.0 - decay_[k] * decay_[k]));
  }
}

void NoiseStepper::advance(NoiseState& state, rng::Stream& rng) const {
  for (std::size_t k = 0; k < decay_.size(); ++k)
    state.modes[k] = decay_[k] * state.modes[k] + kick_std_[k] * rng.normal();
  state.t += dt_;
}

}  // namespace oscidrift
