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

#include "oscidrift/fbm.hpp"

#include <cmath>

#include "oscidrift/errors.hpp"

namespace oscidrift {

FbmTarget::FbmTarget(double H) : hurst(H) {
  if (!(H > 0.0 && H < 1.0))
    throw parameter_error("FbmTarget: Hurst index must lie in (0,1)");
  sigma_H_sq =
      H == 0.5 ? 1.0 : 1.0 / (H * std::abs(2.0 * H - 1.0));
}

double sigma_eps(double eps, double gamma, double L) {
  if (!(eps > 0.0 && eps < 1.0))
    throw parameter_error("sigma_eps: eps must lie in (0,1)");
  if (!(gamma > 0.0 && gamma < 2.0))
    throw parameter_error("sigma_eps: gamma must lie in (0,2)");
  if (!(L > 0.0)) throw parameter_error("sigma_eps: L must be > 0");
  if (gamma == 1.0)
    return std::sqrt(L) * eps * std::sqrt(std::abs(std::log(eps)));
  return std::sqrt(L) * std::pow(eps, gamma);
}

double fbm_cov(double hurst, double s, double t) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw parameter_error("fbm_cov: Hurst index must lie in (0,1)");
  if (s < 0.0 || t < 0.0) throw parameter_error("fbm_cov: times must be >= 0");
  const double twoH = 2.0 * hurst;
  return 0.5 * (std::pow(t, twoH) + std::pow(s, twoH) -
                std::pow(std::abs(t - s), twoH));
}

UPaths integrate_u_eps(const SpectralDensity& density,
                       const NoiseDiscretization& disc, double eps,
                       const std::vector<double>& t_grid, rng::Stream& rng,
                       double dt_fast, bool allow_gamma_one) {
  const double gamma = density.gamma();
  if (gamma > 1.0 && gamma < 2.0)
    throw parameter_error(
        "integrate_u_eps: gamma in (1,2) needs an integrated covariance that "
        "vanishes, impossible for a nonnegative spectral weight r(p)");
  if (gamma >= 2.0)
    throw parameter_error("integrate_u_eps: gamma >= 2, no fBm limit");
  if (gamma == 1.0 && !allow_gamma_one)
    throw parameter_error(
        "integrate_u_eps: gamma = 1 log-scaling runs under the diagnostics "
        "flag only");
  if (t_grid.empty() || t_grid.front() < 0.0)
    throw parameter_error("integrate_u_eps: t_grid must start at >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw parameter_error("integrate_u_eps: t_grid must increase");

  const double L = density.c0();
  const double sigma = sigma_eps(eps, gamma, L);
  const double eps2 = eps * eps;
  const double s_end = t_grid.back() / eps2;
  const long n_steps = std::max(1l, std::lround(s_end / dt_fast));
  const double h = s_end / n_steps;

  UPaths out;
  out.sigma_eps_used = sigma;
  out.L_used = L;
  out.times.reserve(t_grid.size());
  out.u.reserve(t_grid.size());

  NoiseState noise = init_stationary(disc, rng);
  NoiseStepper stepper(disc, h);
  double integral = 0.0;  // fast-time integral of v
  std::size_t next_snap = 0;
  auto maybe_snap = [&](long step) {
    while (next_snap < t_grid.size() &&
           h * step >= t_grid[next_snap] / eps2 - 0.5 * h) {
      out.times.push_back(eps2 * h * step);
      out.u.push_back(eps2 * integral / sigma);
      ++next_snap;
    }
  };
  double v = sample_v(noise);
  maybe_snap(0);
  for (long n = 0; n < n_steps; ++n) {
    stepper.advance(noise, rng);
    const double v_next = sample_v(noise);
    integral += 0.5 * h * (v + v_next);
    v = v_next;
    maybe_snap(n + 1);
  }
  return out;
}

}  // namespace oscidrift
