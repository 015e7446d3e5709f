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

#include "oscidrift/limit_sde.hpp"

#include <algorithm>
#include <cmath>

#include "oscidrift/errors.hpp"
#include "oscidrift/quadrature.hpp"

namespace oscidrift {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
using cplx = std::complex<double>;

// continuum p-integral of kernel(A(p)) against r(p) dp, singularity absorbed
template <typename Kernel>
double density_integral(const SpectralDensity& d, const Kernel& kernel) {
  const double nu = 1.0 - 2.0 * d.alpha();
  const double qmax = std::pow(d.r_s(), nu);
  auto f = [&](double q) {
    const double p = std::pow(q, 1.0 / nu);
    return d.lambda()(p) * kernel(d.decay_rate(p));
  };
  return 2.0 * quadrature::integrate(f, 0.0, qmax, 1e-13, 1e-16) / nu;
}

// mode-sum kernels: Omega = 2 pi n omega
double mode_Rn(const NoiseDiscretization& disc, double Omega) {
  double s = 0.0;
  for (std::size_t k = 0; k < disc.size(); ++k) {
    const double A = disc.decay_rates[k];
    s += disc.weights[k] * 2.0 * A / (A * A + Omega * Omega);
  }
  return s;
}

// K_n = \int_0^inf R(u) e^{i Omega u} du
cplx mode_Kn(const NoiseDiscretization& disc, double Omega) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < disc.size(); ++k) {
    const double A = disc.decay_rates[k];
    s += disc.weights[k] * cplx(A, Omega) / (A * A + Omega * Omega);
  }
  return s;
}

// M_n = \int_0^inf u R(u) e^{i Omega u} du
cplx mode_Mn(const NoiseDiscretization& disc, double Omega) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < disc.size(); ++k) {
    const double A = disc.decay_rates[k];
    const double den = A * A + Omega * Omega;
    const cplx z(A, Omega);
    s += disc.weights[k] * z * z / (den * den);
  }
  return s;
}

// centered first derivative on a nonuniform grid, one-sided at the ends
template <typename T>
std::vector<T> grid_derivative(const std::vector<double>& x,
                               const std::vector<T>& f) {
  const std::size_t n = x.size();
  std::vector<T> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    d[i] = (hm / (hp * (hm + hp))) * f[i + 1] +
           ((hp - hm) / (hp * hm)) * f[i] -
           (hp / (hm * (hm + hp))) * f[i - 1];
  }
  {
    const double h0 = x[1] - x[0], h1 = x[2] - x[1];
    d[0] = -((2.0 * h0 + h1) / (h0 * (h0 + h1))) * f[0] +
           ((h0 + h1) / (h0 * h1)) * f[1] - (h0 / (h1 * (h0 + h1))) * f[2];
    const double g1 = x[n - 2] - x[n - 3], g0 = x[n - 1] - x[n - 2];
    d[n - 1] = ((2.0 * g0 + g1) / (g0 * (g0 + g1))) * f[n - 1] -
               ((g0 + g1) / (g0 * g1)) * f[n - 2] +
               (g0 / (g1 * (g0 + g1))) * f[n - 3];
  }
  return d;
}

}  // namespace

DMatrix d_matrix(const SpectralDensity& density) {
  DMatrix d;
  d.D11 =
      density_integral(density, [](double A) { return A / (A * A + 1.0); });
  d.D12 = 0.0;
  return d;
}

double r_n(const SpectralDensity& density, double omega, int n) {
  if (n == 0)
    throw parameter_error(
        "r_n: n = 0 diverges (long-range correlations charge the zero "
        "frequency)");
  if (!(omega > 0.0)) throw parameter_error("r_n: omega must be > 0");
  const double Omega = kTwoPi * n * omega;
  return density_integral(density, [Omega](double A) {
    return 2.0 * A / (A * A + Omega * Omega);
  });
}

void LimitCoeffs::build_interpolants() {
  a_interp_ = interp::Pchip(I_grid, a_bold);
  b_interp_ = interp::Pchip(I_grid, b_bold);
  btil_interp_ = interp::Pchip(I_grid, b_tilde);
  c_interp_ = interp::Pchip(I_grid, c_cross);
  bpsi_interp_ = interp::Pchip(I_grid, b_psi);
}

LimitCoeffs fourier_coefficients_route(const ActionAngleChart& chart,
                                       const SpectralDensity& density,
                                       const NoiseDiscretization& disc,
                                       int initial_order, double tail_tol) {
  const std::size_t n_rows = chart.I_grid().size();
  const int max_order = chart.n_theta() / 2;
  int order = std::min(initial_order, max_order);

  LimitCoeffs out;
  out.I_grid = chart.I_grid();
  out.K = chart.K_values();
  out.omega = chart.omega_values();
  const DMatrix d = d_matrix(density);
  out.D11 = d.D11;
  out.m = M_PI * d.D11;

  // Fourier coefficients per row at the working truncation order; the order
  // doubles until the upper-half-band share of a_bold is below tail_tol.
  std::vector<std::vector<cplx>> A, B;
  for (;;) {
    A.assign(n_rows, {});
    B.assign(n_rows, {});
    bool tail_ok = true;
    for (std::size_t i = 0; i < n_rows; ++i) {
      OrbitFourier f = chart.fourier(i, order);
      A[i].resize(order + 1);
      B[i].resize(order + 1);
      for (int n = 0; n <= order; ++n) {
        A[i][n] = f.a(n);
        B[i][n] = f.b(n);
      }
      double total = 0.0, tail = 0.0;
      for (int n = 1; n <= order; ++n) {
        const double term = 2.0 * std::norm(A[i][n]) *
                            mode_Rn(disc, kTwoPi * n * out.omega[i]);
        total += term;
        if (2 * n > order) tail += term;
      }
      if (total > 0.0 && tail > tail_tol * total) tail_ok = false;
    }
    if (tail_ok || order >= max_order) {
      if (!tail_ok)
        throw numeric_error(
            "fourier_coefficients_route: truncation tail above threshold at "
            "the maximal order; raise n_theta");
      break;
    }
    order = std::min(2 * order, max_order);
  }
  out.fourier_order = order;

  std::vector<std::vector<cplx>> dA(n_rows), dB(n_rows);
  {
    // Differentiate each harmonic across the action grid.  The raw
    // coefficients carry the square-root behavior a_n ~ sqrt(I),
    // b_n ~ 1/sqrt(I) near the bottom of the well, so the smooth quantities
    // to difference are a_n / sqrt(I) and b_n sqrt(I); the exact scaling is
    // restored afterwards.  For the harmonic well this makes the
    // derivatives exact.
    std::vector<cplx> col(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
      dA[i].resize(order + 1);
      dB[i].resize(order + 1);
    }
    for (int n = 1; n <= order; ++n) {
      for (std::size_t i = 0; i < n_rows; ++i)
        col[i] = A[i][n] / std::sqrt(out.I_grid[i]);
      auto d1 = grid_derivative(out.I_grid, col);
      for (std::size_t i = 0; i < n_rows; ++i) {
        const double sq = std::sqrt(out.I_grid[i]);
        dA[i][n] = sq * d1[i] + A[i][n] / (2.0 * out.I_grid[i]);
      }
      for (std::size_t i = 0; i < n_rows; ++i)
        col[i] = B[i][n] * std::sqrt(out.I_grid[i]);
      auto d2 = grid_derivative(out.I_grid, col);
      for (std::size_t i = 0; i < n_rows; ++i) {
        const double sq = std::sqrt(out.I_grid[i]);
        dB[i][n] = d2[i] / sq - B[i][n] / (2.0 * out.I_grid[i]);
      }
    }
  }

  out.a_bold.assign(n_rows, 0.0);
  out.b_tilde.assign(n_rows, 0.0);
  out.c_cross.assign(n_rows, 0.0);
  out.b_psi_dI.assign(n_rows, 0.0);
  out.b_psi_res.assign(n_rows, 0.0);
  out.b_psi.assign(n_rows, 0.0);

  const auto omega_prime = grid_derivative(out.I_grid, out.omega);

  for (std::size_t i = 0; i < n_rows; ++i) {
    for (int n = 1; n <= order; ++n) {
      const double Omega = kTwoPi * n * out.omega[i];
      const double Rn = mode_Rn(disc, Omega);
      const cplx Kn = mode_Kn(disc, Omega);
      const cplx Mn = mode_Mn(disc, Omega);
      const cplx an = A[i][n], bn = B[i][n];
      out.a_bold[i] += 2.0 * std::norm(an) * Rn;
      out.b_tilde[i] += 2.0 * std::norm(bn) * Rn;
      out.c_cross[i] += 2.0 * std::real(an * std::conj(bn)) * Rn;
      // drift of psi, Fourier form of the coupled bracket:
      //   sum_n (b_n' a_{-n} + b_n a_{-n}') K_n
      //   + sum_n (2 pi i n) omega' b_n a_{-n} M_n
      const cplx cn = dB[i][n] * std::conj(an) + bn * std::conj(dA[i][n]);
      out.b_psi_dI[i] += 2.0 * std::real(cn * Kn);
      const cplx dn = cplx(0.0, kTwoPi * n) * omega_prime[i] * bn *
                      std::conj(an);
      out.b_psi_res[i] += 2.0 * std::real(dn * Mn);
    }
    out.b_psi[i] = out.b_psi_dI[i] + out.b_psi_res[i];
  }

  // action drift: half the grid derivative of the diffusion coefficient
  const auto da = grid_derivative(out.I_grid, out.a_bold);
  out.b_bold.resize(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) out.b_bold[i] = 0.5 * da[i];

  out.Sigma.assign(n_rows, 0.0);
  out.Lambda.assign(n_rows, 0.0);
  out.build_interpolants();
  return out;
}

void line_integral_route(const HamiltonianModel& model,
                         const ActionAngleChart& chart,
                         const NoiseDiscretization& disc, LimitCoeffs& coeffs,
                         int n_samples) {
  const std::size_t n_rows = chart.I_grid().size();
  if (coeffs.I_grid.size() != n_rows)
    throw parameter_error("line_integral_route: coefficient grid mismatch");
  coeffs.Sigma.assign(n_rows, 0.0);
  coeffs.Lambda.assign(n_rows, 0.0);

  for (std::size_t i = 0; i < n_rows; ++i) {
    const double E = chart.K_values()[i];
    OrbitData od = trace_orbit(model, E, n_samples);
    const double T = od.period;
    const int N = n_samples;

    // g = dH/dy along the orbit; its periodic autocorrelation C(u)
    std::vector<double> g(N);
    for (int j = 0; j < N; ++j)
      g[j] = model.dy(od.points[j][0], od.points[j][1]);
    std::vector<double> u_nodes(N + 1), C(N + 1);
    for (int l = 0; l <= N; ++l) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += g[(j + l) % N] * g[j];
      C[l] = s * T / N;
      u_nodes[l] = T * l / N;
    }
    interp::PeriodicSpline Cspline(u_nodes, C);

    // Sigma = 2 sum_k w_k \int_0^inf e^{-A_k u} C(u) du; the u-integral over
    // one period comes from the spline in closed form, the periodic tail is
    // the geometric factor 1/(1 - e^{-A_k T}).
    double sigma = 0.0;
    for (std::size_t k = 0; k < disc.size(); ++k) {
      const double A = disc.decay_rates[k];
      const double one_period = Cspline.integrate_against_exp(A);
      sigma += disc.weights[k] * one_period / (-std::expm1(-A * T));
    }
    coeffs.Sigma[i] = 2.0 * sigma;

    // Lambda = contour integral of dl/|grad H| = \int_0^1 |dX/dtheta| /
    // |grad H| dtheta; dX/dtheta by high-order periodic differences.
    double lambda = 0.0;
    for (int j = 0; j < N; ++j) {
      auto pt = [&](int idx) -> const Vec2& {
        return od.points[((idx % N) + N) % N];
      };
      double dx_dth = 0.0, dy_dth = 0.0;
      static const double w8[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0,
                                   -1.0 / 280.0};
      for (int s = 1; s <= 4; ++s) {
        dx_dth += w8[s - 1] * (pt(j + s)[0] - pt(j - s)[0]);
        dy_dth += w8[s - 1] * (pt(j + s)[1] - pt(j - s)[1]);
      }
      dx_dth *= N;  // d/dtheta = N * d/d(index)
      dy_dth *= N;
      const auto gr = model.grad(od.points[j][0], od.points[j][1]);
      const double gnorm = std::hypot(gr[0], gr[1]);
      lambda += std::hypot(dx_dth, dy_dth) / gnorm;
    }
    coeffs.Lambda[i] = lambda / N;
  }
}

namespace {

// inner exponent of the scale function, 2 \int_1^xi b/a
class ScaleExponent {
 public:
  explicit ScaleExponent(const LimitCoeffs& c) : coeffs_(&c) {}
  double operator()(double xi) const {
    const LimitCoeffs& c = *coeffs_;
    return 2.0 * quadrature::integrate(
                     [&c](double nu) {
                       const double a = c.a_bold_of(nu);
                       if (!(a > 0.0))
                         throw numeric_error(
                             "scale_function: diffusion coefficient vanishes "
                             "inside the integration range");
                       return c.b_bold_of(nu) / a;
                     },
                     1.0, xi, 1e-11, 1e-13);
  }

 private:
  const LimitCoeffs* coeffs_;
};

}  // namespace

double scale_function(const LimitCoeffs& coeffs, double x) {
  if (!(x > 0.0)) throw parameter_error("scale_function: x must be > 0");
  if (x < coeffs.I_min() || x > coeffs.I_max())
    throw numeric_error("scale_function: x outside the coefficient table");
  if (1.0 < coeffs.I_min() || 1.0 > coeffs.I_max())
    throw numeric_error("scale_function: base point 1 outside the table");
  if (x == 1.0) return 0.0;
  ScaleExponent expo(coeffs);
  return quadrature::integrate(
      [&expo](double xi) { return std::exp(-expo(xi)); }, 1.0, x, 1e-9, 1e-12);
}

std::pair<double, double> exit_probability(const LimitCoeffs& coeffs,
                                           double x_minus, double x_plus,
                                           double I0) {
  if (!(0.0 < x_minus && x_minus < I0 && I0 < x_plus))
    throw parameter_error(
        "exit_probability: need 0 < x_minus < I0 < x_plus");
  const double pm = scale_function(coeffs, x_minus);
  const double pp = scale_function(coeffs, x_plus);
  const double p0 = scale_function(coeffs, I0);
  const double span = pp - pm;
  return {(pp - p0) / span, (p0 - pm) / span};
}

JointPath simulate_limit_joint(const LimitCoeffs& coeffs, double I0,
                               double psi0, double T, double dt,
                               rng::Stream& rng, double floor,
                               bool allow_low_grid) {
  if (!(I0 > 0.0)) throw parameter_error("simulate_limit_joint: I0 must be > 0");
  if (!(dt > 0.0 && T > 0.0))
    throw parameter_error("simulate_limit_joint: T and dt must be > 0");
  if (coeffs.I_min() < 1e-3 && !allow_low_grid)
    throw parameter_error(
        "simulate_limit_joint: coefficient grid reaches below I = 1e-3 where "
        "the angle drift is singular; pass allow_low_grid to override");
  if (I0 < coeffs.I_min() || I0 > coeffs.I_max())
    throw parameter_error("simulate_limit_joint: I0 outside coefficient table");

  const long n_steps = std::lround(std::ceil(T / dt));
  const double h = T / n_steps;
  JointPath path;
  path.t.reserve(n_steps + 1);
  path.I.reserve(n_steps + 1);
  path.psi.reserve(n_steps + 1);
  double I = I0, psi = psi0;
  path.t.push_back(0.0);
  path.I.push_back(I);
  path.psi.push_back(psi);
  const double sqh = std::sqrt(h);
  for (long s = 0; s < n_steps; ++s) {
    if (I < coeffs.I_min() || I > coeffs.I_max()) {
      path.truncated = true;
      break;
    }
    const double a = coeffs.a_bold_of(I);
    const double c = coeffs.c_cross_of(I);
    const double bt = coeffs.b_tilde_of(I);
    // Cholesky of [[a, c], [c, bt]]
    const double s11 = std::sqrt(std::max(a, 0.0));
    const double s21 = s11 > 0.0 ? c / s11 : 0.0;
    const double s22 = std::sqrt(std::max(bt - s21 * s21, 0.0));
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    double In = I + coeffs.b_bold_of(I) * h + s11 * z1 * sqh;
    psi += coeffs.b_psi_of(I) * h + (s21 * z1 + s22 * z2) * sqh;
    if (In < floor) {
      In = 2.0 * floor - In;  // reflect, and count the event
      ++path.reflections;
    }
    I = In;
    path.t.push_back(h * (s + 1));
    path.I.push_back(I);
    path.psi.push_back(psi);
  }
  return path;
}

std::vector<double> simulate_bessel_exact(double m, double I0,
                                          const std::vector<double>& t_grid,
                                          rng::Stream& rng) {
  if (!(m > 0.0) || !(I0 > 0.0))
    throw parameter_error("simulate_bessel_exact: m and I0 must be > 0");
  std::vector<double> path;
  path.reserve(t_grid.size());
  double t_prev = 0.0;
  double I = I0;
  for (double t : t_grid) {
    const double delta = t - t_prev;
    if (delta < 0.0)
      throw parameter_error("simulate_bessel_exact: t_grid must be increasing");
    if (delta > 0.0) {
      const double rho = std::sqrt(I / m);
      const double sq = std::sqrt(delta);
      const double g1 = rho + sq * rng.normal();
      const double g2 = sq * rng.normal();
      I = m * (g1 * g1 + g2 * g2);
    }
    path.push_back(I);
    t_prev = t;
  }
  return path;
}

}  // namespace oscidrift
