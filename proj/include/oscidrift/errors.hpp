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

#ifndef OSCIDRIFT_ERRORS_HPP_
#define OSCIDRIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace oscidrift {

// Invalid user-supplied parameter (bad density exponents, nonpositive dt, ...).
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The Hamiltonian violates the single-well hypotheses (open orbit, bad Hessian).
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical machinery failed to meet its tolerance (quadrature, bracketing,
// Fourier truncation, coefficient-table coverage).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trajectory integration blew up; carries the last time that was still finite.
struct integration_failure : std::runtime_error {
  integration_failure(const std::string& what, double last_valid)
      : std::runtime_error(what), last_valid_time(last_valid) {}
  double last_valid_time;
};

// Too many ensemble members failed.
struct ensemble_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oscidrift

#endif  // OSCIDRIFT_ERRORS_HPP_
