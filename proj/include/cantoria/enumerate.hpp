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

#ifndef CANTORIA_ENUMERATE_HPP_
#define CANTORIA_ENUMERATE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantoria/core.hpp"

namespace cantoria::enumerate {

using BigInt = boost::multiprecision::cpp_int;

enum class CountMethod {
  brute,        // every tableau
  normalized,   // last row fixed to 1^n by column flips, times 2^n
  last_column,  // normalized, last column counted analytically
};

std::string_view to_string(CountMethod m);
std::optional<CountMethod> parse_method(std::string_view text);

/// Shard `index` of `count`. Tasks are dealt round-robin, so the sum over
/// all shards of a fixed problem is the full count.
struct Shard {
  std::size_t index = 0;
  std::size_t count = 1;
};

/// Parses "i/m".
Shard parse_shard(std::string_view text);

/// Multiplicity of a prefix in the last-column pipeline; 0 drops it. This is
/// where an orbit-canonicity filter would plug in (return the orbit size for
/// canonical prefixes, 0 otherwise). Rows are packed, n - 1 bits each.
using PrefixWeight =
    std::function<std::uint64_t(std::span<const std::uint64_t> rows, std::size_t n)>;

struct CountOptions {
  CountMethod method = CountMethod::brute;
  unsigned jobs = 1;
  Shard shard{};
  /// Cap on enumerated leaves (tableaux, prefixes or cell subsets).
  double budget = 1e10;
  /// last_column only: skeleton-first order with early row tests.
  bool skeleton = true;
  PrefixWeight prefix_weight{};
};

struct CountReport {
  std::size_t n = 0;
  std::size_t s = 2;
  std::optional<std::size_t> p;  // set for occurrence counts
  BigInt count = 0;
  CountMethod method = CountMethod::brute;
  double elapsed = 0.0;
  Shard shard;
  std::size_t tasks = 0;
};

/// C(n, s): Cantorian n x n tableaux over s letters.
CountReport count_cantorian(std::size_t n, std::size_t s, const CountOptions& options = {});

/// c(n, p): binary Cantorian tableaux with exactly p entries equal to 1.
/// Enumerates p-subsets of cells; the method field is ignored.
CountReport count_by_occurrences(std::size_t n, std::size_t p,
                                 const CountOptions& options = {});

/// c(n, 0..n^2) in one pass over all 2^(n^2) binary tableaux, n <= 8.
std::vector<BigInt> occurrence_histogram(std::size_t n, const CountOptions& options = {});

/// Number of leaves the chosen method would visit before pruning.
BigInt search_size(std::size_t n, std::size_t s, CountMethod method);

/// n - 1 rows a^n and one row b^n: Cantorian for n >= 3, and exactly n such
/// tableaux have n occurrences of b.
Tableau single_b_row_tableau(std::size_t n);

/// Rows a^n except row n-2 = a^(n-3) bbb and row n-1 = b^n, so p = n + 3.
Tableau three_b_tail_tableau(std::size_t n);

/// Even n only: the first n/2 rows given, the rest their complements. Every
/// row disagrees everywhere with its partner, so the result is Cantorian.
Tableau complement_completion(std::span<const std::uint64_t> top_rows, std::size_t n);

struct OccurrenceClaim {
  std::size_t p = 0;
  BigInt expected = 0;
  BigInt actual = 0;
  bool holds() const { return expected == actual; }
};

struct OccurrenceReport {
  std::size_t n = 0;
  std::vector<OccurrenceClaim> claims;
  bool tail_witness_cantorian = false;  // three_b_tail_tableau(n), n >= 3
  std::optional<BigInt> tail_count;     // c(n, n + 3) when requested
  bool all_hold() const;
};

/// Exact checks of the closed forms: c(n,p) = 0 for p < n; c(n,n) = n for
/// n >= 3; c(n,n+1) = 0 for n >= 4; c(n,n+2) = 0 for n >= 5. Also checks
/// the three-b-tail tableau and, if asked, that c(n,n+3) > 0.
OccurrenceReport occurrence_closed_forms(std::size_t n, const CountOptions& options = {},
                                         bool count_tail = false);

/// log2(count) / n^2.
double log2_ratio(const BigInt& count, std::size_t n);

BigInt power(std::size_t base, std::size_t exponent);

/// Union-find over 0/1 variables with constraints x_a xor x_b = parity.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n);

  void reset(std::size_t n);
  /// False when the constraint contradicts earlier ones.
  bool unite(std::size_t a, std::size_t b, bool parity);
  std::size_t components() const noexcept { return components_; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::pair<std::size_t, bool> find(std::size_t v);

  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> parity_;  // parity to parent
  std::vector<std::uint8_t> rank_;
  std::size_t components_ = 0;
};

/// Disequalities x_i != x_k on the last column forced by a binary prefix
/// (n rows, columns 0..n-2). Row k yields i != k for every row i such that
/// the prefix graph of row k minus row i has a perfect matching. A pair
/// (k, k) means row k can never be completed.
std::vector<std::pair<std::size_t, std::size_t>> last_column_conditions(
    std::span<const std::uint64_t> prefix_rows, std::size_t n);

/// Number of last columns x with x_{n-1} = 1 completing the prefix to a
/// Cantorian tableau: 0 if the conditions clash, else 2^(components - 1).
/// The last prefix row must be all ones.
std::uint64_t last_column_count(std::span<const std::uint64_t> prefix_rows, std::size_t n);

}  // namespace cantoria::enumerate

#endif  // CANTORIA_ENUMERATE_HPP_
