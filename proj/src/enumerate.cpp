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

#include "cantoria/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>

#include "cantoria/cantorian.hpp"
#include "cantoria/parallel.hpp"
#include "enumerate_internal.hpp"

namespace cantoria::enumerate {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kTaskBits = 8;

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

void check_budget(const BigInt& leaves, const CountOptions& options) {
  if (static_cast<long double>(leaves) > static_cast<long double>(options.budget)) {
    throw Error("search of " + leaves.str() + " leaves exceeds the budget of " +
                std::to_string(static_cast<long double>(options.budget)));
  }
}

void check_shard(const Shard& shard) {
  if (shard.count == 0 || shard.index >= shard.count) throw Error("invalid shard");
}

std::vector<std::size_t> shard_tasks(std::size_t tasks, const Shard& shard) {
  std::vector<std::size_t> out;
  for (std::size_t t = shard.index; t < tasks; t += shard.count) out.push_back(t);
  return out;
}

// Runs fn(task, checker) over this shard's tasks and sums the results in
// task order.
template <class Fn>
BigInt run_counts(std::size_t tasks, const CountOptions& options, std::size_t& processed,
                  Fn&& fn) {
  check_shard(options.shard);
  const auto mine = shard_tasks(tasks, options.shard);
  const unsigned jobs = effective_jobs(options.jobs);
  std::vector<std::uint64_t> results(mine.size(), 0);
  std::vector<cantorian::Checker> checkers(jobs);
  parallel_for(mine.size(), jobs, [&](std::size_t item, unsigned worker) {
    results[item] = fn(mine[item], checkers[worker]);
  });
  processed = mine.size();
  BigInt total = 0;
  for (auto r : results) total += r;
  return total;
}

// Binary tableaux with `free_bits` free cells laid out row-major from row 0;
// rows past the free cells are taken from `fixed_rows`.
std::uint64_t count_binary_task(std::size_t n, std::size_t free_bits, std::size_t task_bits,
                                std::uint64_t task, std::span<const std::uint64_t> fixed_rows,
                                cantorian::Checker& checker) {
  const std::uint64_t full = low_mask(n);
  const std::size_t free_rows = free_bits / n;
  std::uint64_t rows[64];
  for (std::size_t i = free_rows; i < n; ++i) rows[i] = fixed_rows[i - free_rows];
  const std::uint64_t inner = std::uint64_t{1} << (free_bits - task_bits);
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < inner; ++r) {
    const std::uint64_t mask = task | (r << task_bits);
    for (std::size_t i = 0; i < free_rows; ++i) rows[i] = (mask >> (i * n)) & full;
    count += checker.cantorian_packed(std::span<const std::uint64_t>(rows, n), n);
  }
  return count;
}

std::uint64_t count_entries_task(std::size_t n, std::size_t s, std::size_t task_cells,
                                 std::uint64_t task, cantorian::Checker& checker) {
  const std::size_t cells = n * n;
  std::vector<Symbol> e(cells, 0);
  for (std::size_t c = 0; c < task_cells; ++c) {
    e[c] = static_cast<Symbol>(task % s);
    task /= s;
  }
  std::uint64_t count = 0;
  while (true) {
    count += checker.cantorian_entries(e, n);
    std::size_t c = task_cells;
    while (c < cells && ++e[c] == s) {
      e[c] = 0;
      ++c;
    }
    if (c == cells) break;
  }
  return count;
}

}  // namespace

std::string_view to_string(CountMethod m) {
  switch (m) {
    case CountMethod::brute:
      return "brute";
    case CountMethod::normalized:
      return "normalized";
    case CountMethod::last_column:
      return "last_column";
  }
  return "?";
}

std::optional<CountMethod> parse_method(std::string_view text) {
  for (auto m : {CountMethod::brute, CountMethod::normalized, CountMethod::last_column}) {
    if (text == to_string(m)) return m;
  }
  if (text == "last-column") return CountMethod::last_column;
  return std::nullopt;
}

Shard parse_shard(std::string_view text) {
  const auto slash = text.find('/');
  Shard shard;
  if (slash == std::string_view::npos) throw Error("shard must look like i/m");
  auto parse = [&](std::string_view part, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error("bad shard number '" + std::string(part) + "'");
    }
  };
  parse(text.substr(0, slash), shard.index);
  parse(text.substr(slash + 1), shard.count);
  check_shard(shard);
  return shard;
}

BigInt power(std::size_t base, std::size_t exponent) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

BigInt search_size(std::size_t n, std::size_t s, CountMethod method) {
  switch (method) {
    case CountMethod::brute:
      return power(s, n * n);
    case CountMethod::normalized:
      return power(2, n * (n - 1));
    case CountMethod::last_column:
      return power(2, (n - 1) * (n - 1));
  }
  return 0;
}

CountReport count_cantorian(std::size_t n, std::size_t s, const CountOptions& options) {
  if (n == 0) throw Error("tableau size must be positive");
  if (s < 2 || s > static_cast<std::size_t>(Alphabet::kMaxSize)) {
    throw Error("alphabet size must be in 2.." + std::to_string(Alphabet::kMaxSize));
  }
  if (options.method != CountMethod::brute && s != 2) {
    throw Error(std::string(to_string(options.method)) + " counting needs s = 2");
  }
  check_budget(search_size(n, s, options.method), options);
  if (n > 8) throw Error("exact counting is limited to n <= 8");

  const auto start = Clock::now();
  CountReport report;
  report.n = n;
  report.s = s;
  report.method = options.method;
  report.shard = options.shard;

  if (options.method == CountMethod::brute && s == 2) {
    const std::size_t bits = n * n;
    const std::size_t task_bits = std::min(bits, kTaskBits);
    report.tasks = std::size_t{1} << task_bits;
    report.count = run_counts(report.tasks, options, report.tasks,
                              [&](std::size_t task, cantorian::Checker& checker) {
                                return count_binary_task(n, bits, task_bits, task, {}, checker);
                              });
  } else if (options.method == CountMethod::brute) {
    const std::size_t cells = n * n;
    std::size_t task_cells = 0;
    std::size_t tasks = 1;
    while (task_cells < cells && tasks < 256) {
      tasks *= s;
      ++task_cells;
    }
    report.tasks = tasks;
    report.count = run_counts(tasks, options, report.tasks,
                              [&](std::size_t task, cantorian::Checker& checker) {
                                return count_entries_task(n, s, task_cells, task, checker);
                              });
  } else if (options.method == CountMethod::normalized) {
    const std::size_t bits = n * (n - 1);
    const std::size_t task_bits = std::min(bits, kTaskBits);
    const std::uint64_t last = low_mask(n);
    report.tasks = std::size_t{1} << task_bits;
    report.count = run_counts(report.tasks, options, report.tasks,
                              [&](std::size_t task, cantorian::Checker& checker) {
                                return count_binary_task(n, bits, task_bits, task,
                                                         std::span(&last, 1), checker);
                              });
    report.count <<= n;
  } else {
    const detail::PrefixPlan plan(n, options.skeleton);
    report.tasks = plan.task_count();
    check_shard(options.shard);
    const auto mine = shard_tasks(report.tasks, options.shard);
    const unsigned jobs = effective_jobs(options.jobs);
    std::vector<BigInt> results(mine.size());
    std::vector<detail::PrefixSearch> searches;
    searches.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) searches.emplace_back(plan, options.prefix_weight);
    parallel_for(mine.size(), jobs, [&](std::size_t item, unsigned worker) {
      results[item] = searches[worker].run(mine[item]);
    });
    report.tasks = mine.size();
    for (const auto& r : results) report.count += r;
    report.count <<= n;
  }
  report.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

CountReport count_by_occurrences(std::size_t n, std::size_t p, const CountOptions& options) {
  if (n == 0) throw Error("tableau size must be positive");
  if (n > 8) throw Error("occurrence counting is limited to n <= 8");
  const std::size_t cells = n * n;
  if (p > cells) throw Error("p must lie in 0.." + std::to_string(cells));
  check_budget(binomial(cells, p), options);

  const auto start = Clock::now();
  CountReport report;
  report.n = n;
  report.s = 2;
  report.p = p;
  report.method = CountMethod::brute;
  report.shard = options.shard;

  const std::uint64_t full = low_mask(n);
  auto check_mask = [&](std::uint64_t mask, cantorian::Checker& checker) -> std::uint64_t {
    std::uint64_t rows[8];
    for (std::size_t i = 0; i < n; ++i) rows[i] = (mask >> (i * n)) & full;
    return checker.cantorian_packed(std::span<const std::uint64_t>(rows, n), n);
  };

  // Task c: subsets whose lowest chosen cell is c.
  const std::size_t tasks = p == 0 ? 1 : cells - p + 1;
  report.count = run_counts(tasks, options, report.tasks,
                            [&](std::size_t c, cantorian::Checker& checker) -> std::uint64_t {
                              if (p == 0) return check_mask(0, checker);
                              const std::size_t width = cells - c - 1;
                              const std::size_t k = p - 1;
                              const std::uint64_t head = std::uint64_t{1} << c;
                              if (k == 0) return check_mask(head, checker);
                              std::uint64_t count = 0;
                              std::uint64_t sub = low_mask(k);
                              const std::uint64_t limit = std::uint64_t{1} << width;
                              while (sub < limit) {
                                count += check_mask(head | (sub << (c + 1)), checker);
                                // Next subset of the same size (Gosper).
                                const std::uint64_t low = sub & -sub;
                                const std::uint64_t ripple = sub + low;
                                sub = (((ripple ^ sub) >> 2) / low) | ripple;
                              }
                              return count;
                            });
  report.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<BigInt> occurrence_histogram(std::size_t n, const CountOptions& options) {
  if (n == 0 || n > 7) throw Error("histogram needs 1 <= n <= 7");
  check_budget(power(2, n * n), options);
  check_shard(options.shard);
  const std::size_t bits = n * n;
  const std::size_t task_bits = std::min(bits, kTaskBits);
  const std::uint64_t full = low_mask(n);
  const auto mine = shard_tasks(std::size_t{1} << task_bits, options.shard);
  const unsigned jobs = effective_jobs(options.jobs);
  std::vector<std::vector<std::uint64_t>> partial(mine.size());
  std::vector<cantorian::Checker> checkers(jobs);
  parallel_for(mine.size(), jobs, [&](std::size_t item, unsigned worker) {
    auto& hist = partial[item];
    hist.assign(bits + 1, 0);
    const std::uint64_t task = mine[item];
    const std::uint64_t inner = std::uint64_t{1} << (bits - task_bits);
    std::uint64_t rows[8];
    for (std::uint64_t r = 0; r < inner; ++r) {
      const std::uint64_t mask = task | (r << task_bits);
      for (std::size_t i = 0; i < n; ++i) rows[i] = (mask >> (i * n)) & full;
      if (checkers[worker].cantorian_packed(std::span<const std::uint64_t>(rows, n), n)) {
        ++hist[static_cast<std::size_t>(std::popcount(mask))];
      }
    }
  });
  std::vector<BigInt> out(bits + 1, 0);
  for (const auto& hist : partial) {
    for (std::size_t p = 0; p <= bits; ++p) out[p] += hist[p];
  }
  return out;
}

Tableau single_b_row_tableau(std::size_t n) {
  if (n == 0) throw Error("tableau size must be positive");
  std::vector<Symbol> e(n * n, 0);
  std::fill(e.end() - static_cast<std::ptrdiff_t>(n), e.end(), Symbol{1});
  return Tableau(Alphabet(2), n, std::move(e));
}

Tableau three_b_tail_tableau(std::size_t n) {
  if (n < 3) throw Error("the three-b tail needs n >= 3");
  const auto base = single_b_row_tableau(n);
  std::vector<Symbol> out(base.entries().begin(), base.entries().end());
  for (std::size_t j = n - 3; j < n; ++j) out[(n - 2) * n + j] = 1;
  return Tableau(Alphabet(2), n, std::move(out));
}

Tableau complement_completion(std::span<const std::uint64_t> top_rows, std::size_t n) {
  if (n == 0 || n % 2 != 0) throw Error("complement completion needs an even size");
  const std::size_t h = n / 2;
  if (top_rows.size() != h) throw Error("expected n/2 top rows");
  const std::uint64_t full = low_mask(n);
  std::vector<std::uint64_t> rows(n);
  for (std::size_t i = 0; i < h; ++i) {
    rows[i] = top_rows[i] & full;
    rows[i + h] = ~top_rows[i] & full;
  }
  return Tableau::from_packed(n, rows);
}

bool OccurrenceReport::all_hold() const {
  if (n >= 3 && !tail_witness_cantorian) return false;
  if (tail_count && *tail_count == 0) return false;
  return std::all_of(claims.begin(), claims.end(), [](const auto& c) { return c.holds(); });
}

OccurrenceReport occurrence_closed_forms(std::size_t n, const CountOptions& options,
                                         bool count_tail) {
  OccurrenceReport report;
  report.n = n;
  auto add = [&](std::size_t p, std::size_t expected) {
    OccurrenceClaim claim;
    claim.p = p;
    claim.expected = expected;
    claim.actual = count_by_occurrences(n, p, options).count;
    report.claims.push_back(std::move(claim));
  };
  for (std::size_t p = 0; p < n; ++p) add(p, 0);
  if (n >= 3) add(n, n);
  if (n >= 4) add(n + 1, 0);
  if (n >= 5) add(n + 2, 0);
  if (n >= 3) {
    report.tail_witness_cantorian = cantorian::is_cantorian(three_b_tail_tableau(n)).cantorian;
    if (count_tail) report.tail_count = count_by_occurrences(n, n + 3, options).count;
  }
  return report;
}

double log2_ratio(const BigInt& count, std::size_t n) {
  if (count == 0) return -INFINITY;
  const std::size_t bits = msb(count);
  // Keep 53 leading bits for the mantissa.
  const std::size_t shift = bits > 60 ? bits - 60 : 0;
  const BigInt top = count >> shift;
  const double value = std::log2(top.convert_to<double>()) + static_cast<double>(shift);
  return value / static_cast<double>(n * n);
}

}  // namespace cantoria::enumerate
