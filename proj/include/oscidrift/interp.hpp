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

#ifndef OSCIDRIFT_INTERP_HPP_
#define OSCIDRIFT_INTERP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "oscidrift/errors.hpp"

namespace oscidrift::interp {

// Monotone cubic Hermite interpolation (Fritsch-Carlson slope limiting).
// Shape-preserving on monotone data, C^1 everywhere.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw parameter_error("Pchip: need >= 2 points, equal lengths");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(x_[i + 1] > x_[i]))
        throw parameter_error("Pchip: abscissae must be strictly increasing");
    d_.resize(n);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        double w1 = 2.0 * h[i] + h[i - 1];
        double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double x) const { return eval(x, nullptr); }

  double derivative(double x) const {
    double dy;
    eval(x, &dy);
    return dy;
  }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  static double edge_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) return 0.0;
    if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
      return 3.0 * del0;
    return d;
  }

  double eval(double x, double* deriv) const {
    if (x < x_.front() || x > x_.back())
      throw numeric_error("Pchip: evaluation outside table range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : (it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    if (deriv) {
      const double g00 = (6 * t2 - 6 * t) / h;
      const double g10 = 3 * t2 - 4 * t + 1;
      const double g01 = (-6 * t2 + 6 * t) / h;
      const double g11 = 3 * t2 - 2 * t;
      *deriv = g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
    }
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  }

  std::vector<double> x_, y_, d_;
};

// Periodic cubic spline with closed-form segment integrals against
// exp(-s*u); used to fold orbit autocorrelations against OU kernels.
// Input covers one full period including the duplicated endpoint,
// y.front() == y.back().
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t np = x_.size();  // n + 1 points, n segments
    if (np < 4 || y_.size() != np)
      throw parameter_error("PeriodicSpline: need >= 4 points");
    const double scale = std::max(std::abs(y_.front()), std::abs(y_.back()));
    if (std::abs(y_.front() - y_.back()) > 1e-9 * std::max(1.0, scale))
      throw parameter_error("PeriodicSpline: endpoint values must match");
    y_.back() = y_.front();
    const std::size_t n = np - 1;
    h_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      h_[i] = x_[i + 1] - x_[i];
      if (!(h_[i] > 0.0))
        throw parameter_error("PeriodicSpline: abscissae must be increasing");
    }
    // cyclic tridiagonal system for the second derivatives m_0..m_{n-1}
    auto hm = [&](std::size_t i) { return h_[(i + n - 1) % n]; };
    auto delta = [&](std::size_t i) {
      return (y_[i + 1] - y_[i]) / h_[i];
    };
    std::vector<double> a(n), b(n), c(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = hm(i);
      b[i] = 2.0 * (hm(i) + h_[i]);
      c[i] = h_[i];
      const double d_prev = (i == 0) ? delta(n - 1) : delta(i - 1);
      r[i] = 6.0 * (delta(i) - d_prev);
    }
    std::vector<double> m = solve_cyclic(a, b, c, r);
    m2_.assign(np, 0.0);
    for (std::size_t i = 0; i < n; ++i) m2_[i] = m[i];
    m2_[n] = m[0];
  }

  double operator()(double x) const {
    std::size_t i = locate(x);
    const double h = h_[i];
    const double A = (x_[i + 1] - x) / h;
    const double B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m2_[i] + (B * B * B - B) * m2_[i + 1]) * h * h /
               6.0;
  }

  // \int_{x0}^{xN} f(u) e^{-s u} du, each cubic segment integrated exactly.
  double integrate_against_exp(double s) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
      // cubic in local variable t = u - x_i on [0, h]
      const double h = h_[i];
      const double c0 = y_[i];
      const double c1 = (y_[i + 1] - y_[i]) / h - h * (2.0 * m2_[i] + m2_[i + 1]) / 6.0;
      const double c2 = m2_[i] / 2.0;
      const double c3 = (m2_[i + 1] - m2_[i]) / (6.0 * h);
      total += std::exp(-s * x_[i]) * poly_exp_integral(s, h, c0, c1, c2, c3);
    }
    return total;
  }

 private:
  // Thomas solve of a tridiagonal system with cyclic corner terms, by the
  // Sherman-Morrison correction.  Row i couples x_{i-1}, x_i, x_{i+1} with
  // coefficients a[i], b[i], c[i], indices wrapping cyclically.
  static std::vector<double> solve_cyclic(const std::vector<double>& a,
                                          std::vector<double> b,
                                          const std::vector<double>& c,
                                          std::vector<double> r) {
    const std::size_t n = b.size();
    const double alpha = a[0];      // top-right corner A[0][n-1]
    const double beta = c[n - 1];   // bottom-left corner A[n-1][0]
    const double gamma = -b[0];
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = beta;
    auto tridiag = [&](std::vector<double> rhs) {
      std::vector<double> diag = b, x(n);
      for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / diag[i - 1];
        diag[i] -= w * c[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      x[n - 1] = rhs[n - 1] / diag[n - 1];
      for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - c[i] * x[i + 1]) / diag[i];
      return x;
    };
    const std::vector<double> x = tridiag(r);
    const std::vector<double> z = tridiag(u);
    const double factor = (x[0] + alpha * x[n - 1] / gamma) /
                          (1.0 + z[0] + alpha * z[n - 1] / gamma);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - factor * z[i];
    return out;
  }

  std::size_t locate(double x) const {
    if (x < x_.front() || x > x_.back())
      throw numeric_error("PeriodicSpline: evaluation outside table range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : (it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
  }

  // \int_0^h (c0 + c1 t + c2 t^2 + c3 t^3) e^{-s t} dt.  The upward
  // recursion for the moments loses (1/(s h))^k digits, so small s h takes
  // the alternating series instead.
  static double poly_exp_integral(double s, double h, double c0, double c1,
                                  double c2, double c3) {
    double ik[4];
    const double sh = s * h;
    if (std::abs(sh) < 3.0) {
      // I_k = h^{k+1} sum_j (-s h)^j / (j! (k + j + 1))
      for (int k = 0; k < 4; ++k) {
        double term = 1.0;  // (-sh)^j / j!
        double sum = 1.0 / (k + 1);
        for (int j = 1; j < 60; ++j) {
          term *= -sh / j;
          const double add = term / (k + j + 1);
          sum += add;
          if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        ik[k] = std::pow(h, k + 1) * sum;
      }
    } else {
      const double e = std::exp(-sh);
      ik[0] = (1.0 - e) / s;
      double hk = 1.0;
      for (int k = 1; k < 4; ++k) {
        hk *= h;
        ik[k] = (k * ik[k - 1] - hk * e) / s;
      }
    }
    return c0 * ik[0] + c1 * ik[1] + c2 * ik[2] + c3 * ik[3];
  }

  std::vector<double> x_, y_, h_, m2_;
};

}  // namespace oscidrift::interp

#endif  // OSCIDRIFT_INTERP_HPP_
