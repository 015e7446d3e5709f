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

#include "oscidrift/mc_stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "oscidrift/errors.hpp"

namespace oscidrift {

EnsembleSummary run_ensemble(const PathTask& task, std::size_t n_paths,
                             std::uint64_t base_seed, int workers) {
  if (n_paths < 2) throw parameter_error("run_ensemble: n_paths must be >= 2");
  if (workers < 1) workers = 1;

  struct Slot {
    std::vector<double> values;
    bool ok = false;
    std::string error;
  };
  std::vector<Slot> slots(n_paths);
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_paths) return;
      rng::Stream stream(base_seed, static_cast<std::uint64_t>(i));
      try {
        slots[i].values = task(i, stream);
        slots[i].ok = true;
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  EnsembleSummary summary;
  summary.n_paths = n_paths;
  summary.base_seed = base_seed;
  std::size_t width = 0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    if (slots[i].ok) {
      if (width == 0) width = slots[i].values.size();
      if (slots[i].values.size() != width)
        throw ensemble_error("run_ensemble: paths returned unequal widths");
    } else {
      ++summary.n_failed;
      summary.failures.emplace_back(i, slots[i].error);
    }
  }
  if (summary.n_failed * 100 > n_paths)
    throw ensemble_error("run_ensemble: more than 1% of paths failed (" +
                         std::to_string(summary.n_failed) + "/" +
                         std::to_string(n_paths) + ")");
  if (width == 0) throw ensemble_error("run_ensemble: all paths failed");

  summary.samples.assign(width, {});
  for (auto& s : summary.samples) s.reserve(n_paths - summary.n_failed);
  for (std::size_t i = 0; i < n_paths; ++i) {
    if (!slots[i].ok) continue;
    for (std::size_t j = 0; j < width; ++j)
      summary.samples[j].push_back(slots[i].values[j]);
  }
  summary.mean.resize(width);
  summary.variance.resize(width);
  summary.std_error.resize(width);
  for (std::size_t j = 0; j < width; ++j) {
    const Moments m = moments(summary.samples[j]);
    summary.mean[j] = m.mean;
    summary.variance[j] = m.variance;
    summary.std_error[j] = m.std_error;
  }
  return summary;
}

Moments moments(const std::vector<double>& sample) {
  const std::size_t n = sample.size();
  if (n == 0) throw parameter_error("moments: empty sample");
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  Moments m;
  m.mean = mean;
  m.variance = n > 1 ? ss / (n - 1) : 0.0;
  m.std_error = n > 1 ? std::sqrt(m.variance / n) : 0.0;
  return m;
}

namespace {

// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
double ks_q(double lambda) {
  if (lambda < 1e-10) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw parameter_error("ks_two_sample: samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = a.size(), nb = b.size();
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double xa = a[ia], xb = b[ib];
    if (xa <= xb) ++ia;
    if (xb <= xa) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  d = std::max({d, std::abs(1.0 - ib / nb), std::abs(ia / na - 1.0)});
  const double ne = na * nb / (na + nb);
  const double sq = std::sqrt(ne);
  KsResult r;
  r.statistic = d;
  r.p_value = ks_q((sq + 0.12 + 0.11 / sq) * d);
  return r;
}

TrendFit trend_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw parameter_error("trend_fit: need >= 3 pairs");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw parameter_error("trend_fit: inputs must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw parameter_error("trend_fit: degenerate abscissae");
  TrendFit f;
  f.exponent = sxy / sxx;
  f.log_intercept = my - f.exponent * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace oscidrift
