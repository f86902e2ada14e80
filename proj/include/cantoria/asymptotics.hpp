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

#ifndef CANTORIA_ASYMPTOTICS_HPP_
#define CANTORIA_ASYMPTOTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantoria/core.hpp"
#include "cantoria/graph.hpp"
#include "cantoria/random.hpp"

namespace cantoria::asymptotics {

inline constexpr double kZ95 = 1.959963984540054;

/// I.i.d. uniform entries, row-major, one below(s) draw per cell.
Tableau sample_random_tableau(std::size_t n, std::size_t s, CounterRng& rng);
void fill_random(std::span<Symbol> entries, std::size_t s, CounterRng& rng);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = kZ95);

struct Estimate {
  std::size_t n = 0;
  std::size_t s = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double fraction = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::uint64_t seed = 0;

  static Estimate from_counts(std::size_t n, std::size_t s, std::uint64_t trials,
                              std::uint64_t hits, std::uint64_t seed);
  bool covers(double value) const { return ci_lo <= value && value <= ci_hi; }
};

/// Trial t samples its tableau from CounterRng(seed, t).
Estimate estimate_cantorian_fraction(std::size_t n, std::size_t s, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs = 1);

/// Digraph on rows 0..n-2 with i -> j iff a(i, j) == a(n-1, j).
graph::Digraph last_row_digraph(const Tableau& t);

/// Turns a Hamiltonian cycle of last_row_digraph into rows[j] = row supplying
/// column j: each row feeds its successor's column, row n-1 feeds itself.
std::vector<std::size_t> witness_from_cycle(std::span<const std::size_t> cycle,
                                            std::size_t n);

struct HamiltonAudit {
  /// hits = samples whose digraph was found Hamiltonian.
  Estimate estimate;
  std::uint64_t undecided = 0;
  /// Hamiltonian samples where the assembled witness failed or the tableau
  /// tested Cantorian. Should be zero.
  std::uint64_t violations = 0;
};

HamiltonAudit hamiltonian_witness_fraction(std::size_t n, std::size_t s, std::uint64_t trials,
                                           std::uint64_t seed, unsigned jobs = 1,
                                           const graph::HamiltonOptions& options = {});

enum class LogBase { natural, binary };

std::string_view to_string(LogBase base);

enum class Regime { below, between, above };

std::string_view to_string(Regime r);

struct ThresholdParams {
  std::optional<double> r_n;  // default sqrt(log n)
  double epsilon = 0.1;
  LogBase log_base = LogBase::natural;
};

struct Thresholds {
  double r_n = 0.0;
  double lower = 0.0;  // n / (log n + log log n + r_n)
  double upper = 0.0;  // n / (log n - log log n - epsilon); +inf if undefined
};

Thresholds thresholds(std::size_t n, const ThresholdParams& params = {});
Regime classify(std::size_t s, const Thresholds& t);

struct SweepConfig {
  std::vector<std::size_t> n_values;
  /// Alphabet sizes tried at every n. Empty: the largest integer below the
  /// lower threshold and the smallest above the upper one.
  std::vector<std::size_t> s_values;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  ThresholdParams params;
  unsigned jobs = 1;
};

struct SweepRow {
  std::size_t n = 0;
  std::size_t s = 0;
  Regime regime = Regime::between;
  Estimate estimate;
  double r_n = 0.0;
  double epsilon = 0.0;
  LogBase log_base = LogBase::natural;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// For every n with rows on both sides: each below-threshold fraction is
  /// smaller than each above-threshold fraction.
  bool ordered = true;
};

SweepReport phase_sweep(const SweepConfig& config);

/// Header plus one line per row.
std::string sweep_csv(const SweepReport& report);

}  // namespace cantoria::asymptotics

#endif  // CANTORIA_ASYMPTOTICS_HPP_
