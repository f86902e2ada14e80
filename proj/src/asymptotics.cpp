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

#include "cantoria/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cantoria/cantorian.hpp"
#include "cantoria/parallel.hpp"

namespace cantoria::asymptotics {

namespace {

constexpr std::uint64_t kTrialsPerBlock = 256;

void check_sizes(std::size_t n, std::size_t s) {
  if (n == 0) throw Error("tableau size must be positive");
  if (s < 2 || s > static_cast<std::size_t>(Alphabet::kMaxSize)) {
    throw Error("alphabet size must be in 2.." + std::to_string(Alphabet::kMaxSize));
  }
}

// Splits [0, trials) into fixed blocks and sums fn(first, last, worker).
template <class Fn>
std::vector<std::uint64_t> run_blocks(std::uint64_t trials, unsigned jobs, std::size_t fields,
                                      Fn&& fn) {
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(fields, 0));
  parallel_for(blocks, effective_jobs(jobs), [&](std::size_t b, unsigned worker) {
    const std::uint64_t first = b * kTrialsPerBlock;
    const std::uint64_t last = std::min(trials, first + kTrialsPerBlock);
    fn(first, last, worker, partial[b]);
  });
  std::vector<std::uint64_t> total(fields, 0);
  for (const auto& p : partial) {
    for (std::size_t f = 0; f < fields; ++f) total[f] += p[f];
  }
  return total;
}

double log_in(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

}  // namespace

void fill_random(std::span<Symbol> entries, std::size_t s, CounterRng& rng) {
  for (auto& e : entries) e = static_cast<Symbol>(rng.below(s));
}

Tableau sample_random_tableau(std::size_t n, std::size_t s, CounterRng& rng) {
  check_sizes(n, s);
  std::vector<Symbol> entries(n * n);
  fill_random(entries, s, rng);
  return Tableau(Alphabet(static_cast<int>(s)), n, std::move(entries));
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Rounding can push an endpoint past the point estimate at the edges.
  out.lo = std::min(out.lo, p);
  out.hi = std::max(out.hi, p);
  if (hits == 0) out.lo = 0.0;
  if (hits == trials) out.hi = 1.0;
  return out;
}

Estimate Estimate::from_counts(std::size_t n, std::size_t s, std::uint64_t trials,
                               std::uint64_t hits, std::uint64_t seed) {
  Estimate e;
  e.n = n;
  e.s = s;
  e.trials = trials;
  e.hits = hits;
  e.fraction = trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
  const auto ci = wilson_interval(hits, trials);
  e.ci_lo = ci.lo;
  e.ci_hi = ci.hi;
  e.seed = seed;
  return e;
}

Estimate estimate_cantorian_fraction(std::size_t n, std::size_t s, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs) {
  check_sizes(n, s);
  if (trials == 0) throw Error("need at least one trial");
  const unsigned workers = effective_jobs(jobs);
  std::vector<cantorian::Checker> checkers(workers);
  const Alphabet alphabet(static_cast<int>(s));
  auto totals = run_blocks(trials, jobs, 1, [&](std::uint64_t first, std::uint64_t last,
                                                 unsigned worker, std::vector<std::uint64_t>& out) {
    std::vector<Symbol> entries(n * n);
    for (std::uint64_t t = first; t < last; ++t) {
      CounterRng rng(seed, t);
      fill_random(entries, s, rng);
      bool cantorian;
      if (n <= 64) {
        cantorian = checkers[worker].cantorian_entries(entries, n);
      } else {
        cantorian = cantorian::is_cantorian(Tableau(alphabet, n, entries)).cantorian;
      }
      out[0] += cantorian;
    }
  });
  return Estimate::from_counts(n, s, trials, totals[0], seed);
}

graph::Digraph last_row_digraph(const Tableau& t) {
  const std::size_t n = t.size();
  if (n < 2) throw Error("the last-row digraph needs n >= 2");
  graph::Digraph d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (t(i, j) == t(n - 1, j)) d.add_edge(i, j);
    }
  }
  return d;
}

std::vector<std::size_t> witness_from_cycle(std::span<const std::size_t> cycle, std::size_t n) {
  if (cycle.size() + 1 != n) throw Error("cycle must visit rows 0..n-2");
  std::vector<std::size_t> rows(n);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    rows[cycle[(k + 1) % cycle.size()]] = cycle[k];
  }
  rows[n - 1] = n - 1;
  return rows;
}

HamiltonAudit hamiltonian_witness_fraction(std::size_t n, std::size_t s, std::uint64_t trials,
                                           std::uint64_t seed, unsigned jobs,
                                           const graph::HamiltonOptions& options) {
  check_sizes(n, s);
  if (n < 2) throw Error("the Hamiltonian witness needs n >= 2");
  if (trials == 0) throw Error("need at least one trial");
  // Fields: found, undecided, violations.
  auto totals = run_blocks(trials, jobs, 3, [&](std::uint64_t first, std::uint64_t last,
                                                 unsigned, std::vector<std::uint64_t>& out) {
    for (std::uint64_t t = first; t < last; ++t) {
      CounterRng rng(seed, t);
      const auto tableau = sample_random_tableau(n, s, rng);
      const auto result = graph::find_hamiltonian_cycle(last_row_digraph(tableau), options);
      if (result.status == graph::HamiltonStatus::undecided) {
        ++out[1];
        continue;
      }
      if (result.status != graph::HamiltonStatus::found) continue;
      ++out[0];
      cantorian::Witness w{n - 1, witness_from_cycle(result.cycle, n)};
      if (!cantorian::witness_valid(tableau, w) ||
          cantorian::is_cantorian(tableau).cantorian) {
        ++out[2];
      }
    }
  });
  HamiltonAudit audit;
  audit.estimate = Estimate::from_counts(n, s, trials, totals[0], seed);
  audit.undecided = totals[1];
  audit.violations = totals[2];
  return audit;
}

std::string_view to_string(LogBase base) { return base == LogBase::natural ? "e" : "2"; }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::below:
      return "below";
    case Regime::between:
      return "between";
    case Regime::above:
      return "above";
  }
  return "?";
}

Thresholds thresholds(std::size_t n, const ThresholdParams& params) {
  if (n < 2) throw Error("thresholds need n >= 2");
  const double x = static_cast<double>(n);
  const double log_n = log_in(x, params.log_base);
  const double loglog_n = log_in(log_n, params.log_base);
  Thresholds t;
  t.r_n = params.r_n ? *params.r_n : std::sqrt(log_n);
  const double inf = std::numeric_limits<double>::infinity();
  const double lower_den = log_n + loglog_n + t.r_n;
  const double upper_den = log_n - loglog_n - params.epsilon;
  t.lower = lower_den > 0 ? x / lower_den : inf;
  t.upper = upper_den > 0 ? x / upper_den : inf;
  return t;
}

Regime classify(std::size_t s, const Thresholds& t) {
  const double x = static_cast<double>(s);
  if (x < t.lower) return Regime::below;
  if (x > t.upper) return Regime::above;
  return Regime::between;
}

SweepReport phase_sweep(const SweepConfig& config) {
  SweepReport report;
  for (std::size_t n : config.n_values) {
    const auto th = thresholds(n, config.params);
    std::vector<std::size_t> s_values = config.s_values;
    if (s_values.empty()) {
      const double below = std::ceil(th.lower) - 1.0;
      if (std::isfinite(below) && below >= 2.0) s_values.push_back(static_cast<std::size_t>(below));
      const double above = std::floor(th.upper) + 1.0;
      if (std::isfinite(above) && above <= Alphabet::kMaxSize) {
        s_values.push_back(static_cast<std::size_t>(std::max(2.0, above)));
      }
    }
    double max_below = -1.0;
    double min_above = 2.0;
    for (std::size_t s : s_values) {
      SweepRow row;
      row.n = n;
      row.s = s;
      row.regime = classify(s, th);
      row.estimate = estimate_cantorian_fraction(n, s, config.trials, config.seed, config.jobs);
      row.r_n = th.r_n;
      row.epsilon = config.params.epsilon;
      row.log_base = config.params.log_base;
      if (row.regime == Regime::below) max_below = std::max(max_below, row.estimate.fraction);
      if (row.regime == Regime::above) min_above = std::min(min_above, row.estimate.fraction);
      report.rows.push_back(row);
    }
    if (max_below >= 0.0 && min_above <= 1.0 && !(max_below < min_above)) {
      report.ordered = false;
    }
  }
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "n,s,regime,trials,hits,fraction,ci_lo,ci_hi,seed,r_n,epsilon,log_base\n";
  for (const auto& r : report.rows) {
    const auto& e = r.estimate;
    out << r.n << ',' << r.s << ',' << to_string(r.regime) << ',' << e.trials << ',' << e.hits
        << ',' << e.fraction << ',' << e.ci_lo << ',' << e.ci_hi << ',' << e.seed << ','
        << r.r_n << ',' << r.epsilon << ',' << to_string(r.log_base) << '\n';
  }
  return out.str();
}

}  // namespace cantoria::asymptotics
