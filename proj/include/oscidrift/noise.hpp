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

#ifndef OSCIDRIFT_NOISE_HPP_
#define OSCIDRIFT_NOISE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "oscidrift/rng.hpp"

namespace oscidrift {

// Spectral weight lambda(p): even, smooth, bounded, lambda(0) != 0.
// Restricted to two reproducible presets: a constant and 1 + c p^2.
struct LambdaSpec {
  enum class Kind { Const, Quadratic };
  Kind kind = Kind::Const;
  double value = 1.0;  // Const: lambda(p) = value
  double c = 0.0;      // Quadratic: lambda(p) = 1 + c p^2

  double operator()(double p) const {
    return kind == Kind::Const ? value : 1.0 + c * p * p;
  }
  double at_zero() const { return kind == Kind::Const ? value : 1.0; }
};

// Parameters of the stationary Gaussian noise
//   R(t) = \int_S lambda(p) |p|^{-2 alpha} e^{-mu |p|^{2 beta} |t|} dp,
// S = (-r_s, r_s).  The covariance decays like t^{-gamma} with
// gamma = (1 - 2 alpha) / (2 beta).
class SpectralDensity {
 public:
  SpectralDensity(double r_s, double alpha, double beta, double mu,
                  LambdaSpec lambda = {});

  double r_s() const { return r_s_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double mu() const { return mu_; }
  const LambdaSpec& lambda() const { return lambda_; }

  // r(p) = lambda(p) / |p|^{2 alpha}, p != 0
  double r(double p) const;

  // decay rate of the OU mode at wavenumber p
  double decay_rate(double p) const;

  // R(t) by singularity-absorbing quadrature; valid for all t >= 0
  double covariance(double t) const;

  double gamma() const { return (1.0 - 2.0 * alpha_) / (2.0 * beta_); }
  double hurst() const { return 1.0 - 0.5 * gamma(); }
  // gamma < 2, i.e. 2 alpha + 4 beta > 1
  bool fbm_renormalizable() const { return gamma() < 2.0; }

  // tail constant: lim t^gamma R(t) = lambda(0) Gamma(gamma) mu^{-gamma}/beta
  double c0() const;

 private:
  double r_s_, alpha_, beta_, mu_;
  LambdaSpec lambda_;
};

struct GammaExponent {
  double gamma;
  double hurst;
  bool fbm_renormalizable;
};

GammaExponent gamma_exponent(const SpectralDensity& density);

// Finite mode set approximating the measure r(p) dp on S.  Nodes exclude 0
// and come in symmetric +/- pairs; each weight already carries r(p_k) and
// the Jacobian of the substitution q = p^{1-2alpha} that removes the
// endpoint singularity.
struct NoiseDiscretization {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> decay_rates;  // mu |p_k|^{2 beta}

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
  // R(t) as reproduced by the mode set
  double reconstructed_covariance(double t) const;
};

NoiseDiscretization discretize_spectrum(const SpectralDensity& density,
                                        int n_modes);

// Largest |reconstructed - exact| covariance error over the given lags.
double reconstruction_error(const SpectralDensity& density,
                            const NoiseDiscretization& disc,
                            const std::vector<double>& lags);

// Mode values V_k at fast time t.  In stationarity Var V_k = w_k.
struct NoiseState {
  double t = 0.0;
  std::vector<double> modes;
};

NoiseState init_stationary(const NoiseDiscretization& disc, rng::Stream& rng);

// Exact-in-law conditional update over a step of size dt:
//   V_k <- e^{-a_k dt} V_k + N(0, w_k (1 - e^{-2 a_k dt})).
void step(NoiseState& state, const NoiseDiscretization& disc, double dt,
          rng::Stream& rng);

double sample_v(const NoiseState& state);

// Precomputed per-mode factors for repeated fixed-dt stepping.
class NoiseStepper {
 public:
  NoiseStepper(const NoiseDiscretization& disc, double dt);
  void advance(NoiseState& state, rng::Stream& rng) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  std::vector<double> decay_;
  std::vector<double> kick_std_;
};

}  // namespace oscidrift

#endif  // OSCIDRIFT_NOISE_HPP_
