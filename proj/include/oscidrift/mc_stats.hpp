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

#ifndef OSCIDRIFT_MC_STATS_HPP_
#define OSCIDRIFT_MC_STATS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oscidrift/rng.hpp"

namespace oscidrift {

struct EnsembleSummary {
  std::size_t n_paths = 0;
  std::size_t n_failed = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::pair<std::size_t, std::string>> failures;
  // per metric, over successful paths
  std::vector<double> mean;
  std::vector<double> variance;   // unbiased
  std::vector<double> std_error;  // of the mean
  // samples[metric][path]; kept for distributional tests
  std::vector<std::vector<double>> samples;

  double mean_of(std::size_t metric) const { return mean.at(metric); }
  double se_of(std::size_t metric) const { return std_error.at(metric); }
};

// One path = one call of `task` with its own counter-based stream derived
// from (base_seed, path index); the result is a fixed-width metric vector.
// Scheduling is work-stealing but reduction is by path index, so the
// summary is bit-identical for any worker count.  Failed paths are recorded;
// more than 1% failures aborts the ensemble.
using PathTask =
    std::function<std::vector<double>(std::size_t path_index, rng::Stream&)>;

EnsembleSummary run_ensemble(const PathTask& task, std::size_t n_paths,
                             std::uint64_t base_seed, int workers);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// classical two-sample Kolmogorov-Smirnov with the asymptotic p-value
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct TrendFit {
  double exponent = 0.0;
  double log_intercept = 0.0;
  double r_squared = 1.0;
};

// least squares in log-log coordinates; inputs must be positive
TrendFit trend_fit(const std::vector<double>& x, const std::vector<double>& y);

// mean / unbiased variance / standard error of a sample
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
};
Moments moments(const std::vector<double>& sample);

}  // namespace oscidrift

#endif  // OSCIDRIFT_MC_STATS_HPP_
