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

#ifndef OSCIDRIFT_RNG_HPP_
#define OSCIDRIFT_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>

namespace oscidrift::rng {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).  Each (seed,
// stream) pair yields an independent sequence; the counter gives 2^66 usable
// 32-bit outputs per stream, far beyond any run here.
class Stream {
 public:
  Stream() : Stream(0, 0) {}
  Stream(std::uint64_t seed, std::uint64_t stream_id) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    ctr_ = {0u, 0u, static_cast<std::uint32_t>(stream_id),
            static_cast<std::uint32_t>(stream_id >> 32)};
    buf_pos_ = 4;
    have_spare_ = false;
    spare_ = 0.0;
  }

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) {
      buf_ = philox(ctr_, key_);
      // 128-bit counter increment over the low two words.
      if (++ctr_[0] == 0) ++ctr_[1];
      buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on (0,1]: never returns 0, safe under log().
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  // Uniform on [0,1).
  double uniform_co() {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
  }

  // Standard normal via Box-Muller; one spare cached per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform_co();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  using block = std::array<std::uint32_t, 4>;

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  static block philox(block ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(M0, ctr[0], hi0, lo0);
      mulhilo(M1, ctr[2], hi1, lo1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += W0;
      key[1] += W1;
    }
    return ctr;
  }

  std::array<std::uint32_t, 2> key_;
  block ctr_;
  block buf_{};
  int buf_pos_;
  bool have_spare_;
  double spare_;
};

}  // namespace oscidrift::rng

#endif  // OSCIDRIFT_RNG_HPP_
