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

#ifndef OSCIDRIFT_QUADRATURE_HPP_
#define OSCIDRIFT_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "oscidrift/errors.hpp"

namespace oscidrift::quadrature {

struct Rule {
  std::vector<double> nodes;    // on (a,b)
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [a,b] by Newton iteration on P_n.
inline Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw parameter_error("gauss_legendre: n must be >= 1");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

namespace detail {

// Gauss-Kronrod 15(7) abscissae/weights on [-1,1], positive half.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    res_k += kWgk[j] * fsum;
    if (j % 2 == 1) res_g += kWg[(j - 1) / 2] * fsum;
  }
  result = res_k * h;
  const double diff = std::abs(res_k - res_g) * h;
  err = diff;
  if (diff > 0.0) {
    double scaled = std::pow(200.0 * diff, 1.5);
    if (scaled < diff) err = scaled;
  }
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a,b].  Tolerance is abs_tol + rel_tol*|I|.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 1e-14, int max_depth = 60) {
  struct Seg {
    double a, b, res, err;
    int depth;
  };
  double res0, err0;
  detail::gk15(f, a, b, res0, err0);
  std::vector<Seg> heap{{a, b, res0, err0, 0}};
  double total = res0;
  double total_err = err0;
  for (int iter = 0; iter < 20000; ++iter) {
    if (total_err <= abs_tol + rel_tol * std::abs(total)) return total;
    // split the segment with the largest error
    std::size_t worst = 0;
    for (std::size_t i = 1; i < heap.size(); ++i)
      if (heap[i].err > heap[worst].err) worst = i;
    Seg seg = heap[worst];
    if (seg.depth >= max_depth)
      throw numeric_error("integrate: max recursion depth reached");
    const double mid = 0.5 * (seg.a + seg.b);
    Seg left{seg.a, mid, 0, 0, seg.depth + 1};
    Seg right{mid, seg.b, 0, 0, seg.depth + 1};
    detail::gk15(f, left.a, left.b, left.res, left.err);
    detail::gk15(f, right.a, right.b, right.res, right.err);
    total += left.res + right.res - seg.res;
    total_err += left.err + right.err - seg.err;
    heap[worst] = left;
    heap.push_back(right);
  }
  throw numeric_error("integrate: failed to converge");
}

}  // namespace oscidrift::quadrature

#endif  // OSCIDRIFT_QUADRATURE_HPP_
