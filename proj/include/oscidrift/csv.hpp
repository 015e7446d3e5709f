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

#ifndef OSCIDRIFT_CSV_HPP_
#define OSCIDRIFT_CSV_HPP_

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "oscidrift/errors.hpp"

namespace oscidrift::csv {

// UTF-8, LF line endings, shortest round-trippable doubles.  Optional
// fields render as empty cells.
class Writer {
 public:
  Writer(const std::string& path, const std::vector<std::string>& columns)
      : out_(path, std::ios::binary), ncols_(columns.size()) {
    if (!out_) throw config_error("cannot open output file: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns[i];
    }
    out_ << '\n';
  }

  // optional fields render as empty cells
  void row_opt(const std::vector<std::optional<double>>& values) {
    if (values.size() != ncols_)
      throw config_error("csv row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      if (values[i]) out_ << format(*values[i]);
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    row_opt(v);
  }

  static std::string format(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
      char probe[40];
      std::snprintf(probe, sizeof(probe), "%.*g", prec, x);
      double back = std::strtod(probe, nullptr);
      if (back == x) return probe;
    }
    return buf;
  }

 private:
  std::ofstream out_;
  std::size_t ncols_;
};

}  // namespace oscidrift::csv

#endif  // OSCIDRIFT_CSV_HPP_
