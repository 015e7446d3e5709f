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

#ifndef OSCIDRIFT_FBM_HPP_
#define OSCIDRIFT_FBM_HPP_

#include <vector>

#include "oscidrift/noise.hpp"
#include "oscidrift/rng.hpp"

namespace oscidrift {

// Target of the noise renormalization: u^eps -> sigma_H B^H with
// H = 1 - gamma/2.
struct FbmTarget {
  double hurst = 0.5;
  double sigma_H_sq = 1.0;

  explicit FbmTarget(double H);
};

// sigma(eps) = sqrt(L) eps^gamma (gamma != 1), sqrt(L) eps |ln eps|^{1/2}
// (gamma = 1).  L is the slowly-varying factor, treated as a constant.
double sigma_eps(double eps, double gamma, double L = 1.0);

// standard fBm covariance (t^{2H} + s^{2H} - |t-s|^{2H}) / 2
double fbm_cov(double hurst, double s, double t);

struct UPaths {
  std::vector<double> times;
  std::vector<double> u;
  double sigma_eps_used = 0.0;
  double L_used = 0.0;
};

// u^eps(t) = (1/sigma(eps)) \int_0^t v(s/eps^2) ds by trapezoid on the fast
// grid.  The slowly-varying factor is pinned to the tail constant c0 of the
// density so the limit variance is exactly sigma_H^2.  Densities with
// gamma in (1, 2) are rejected: the vanishing-mean condition on the
// integrated covariance cannot hold for a nonnegative spectral weight.
UPaths integrate_u_eps(const SpectralDensity& density,
                       const NoiseDiscretization& disc, double eps,
                       const std::vector<double>& t_grid, rng::Stream& rng,
                       double dt_fast = 0.031415926535897932,
                       bool allow_gamma_one = false);

}  // namespace oscidrift

#endif  // OSCIDRIFT_FBM_HPP_
