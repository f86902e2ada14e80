// Copyright 2026 The Cantoria Authors
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

#ifndef CANTORIA_RANDOM_HPP_
#define CANTORIA_RANDOM_HPP_

#include <cstdint>
#include <limits>
#include <string_view>

namespace cantoria {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i of stream (seed, stream) is
/// splitmix64_mix(key + (i + 1) * golden), key derived from seed and stream.
/// Any (seed, stream, i) triple can be evaluated independently, so trials
/// get their own stream and results do not depend on scheduling.
///
/// Bounded integers use Lemire's multiply-and-reject, not <random>
/// distributions, so draws are identical across standard libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view kName = "splitmix64-ctr/1";
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGolden))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return splitmix64_mix(key_ + (++counter_) * kGolden);
  }

  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double unit() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Independent generator keyed on this one's key and `stream`.
  constexpr CounterRng split(std::uint64_t stream) const noexcept {
    return CounterRng(key_, stream);
  }

  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace cantoria

#endif  // CANTORIA_RANDOM_HPP_
