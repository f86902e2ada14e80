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

#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

#include "cantoria/cantorian.hpp"
#include "cantoria/enumerate.hpp"
#include "helpers.hpp"

using namespace cantoria;
using namespace cantoria::enumerate;

namespace {

// Counts Cantorian tableaux by walking every grid through the oracle.
std::uint64_t oracle_count(std::size_t n, int s) {
  const std::uint64_t total = testing::ipow(static_cast<std::uint64_t>(s), n * n);
  std::uint64_t hits = 0;
  for (std::uint64_t index = 0; index < total; ++index) {
    hits += oracle::cantorian(oracle::grid_from_index(index, n, s));
  }
  return hits;
}

// Prefix rows (n-1 columns) plus a chosen last column, checked directly.
std::uint64_t brute_last_column(const std::vector<std::uint64_t>& prefix, std::size_t n) {
  std::uint64_t hits = 0;
  for (std::uint64_t col = 0; col < (std::uint64_t{1} << (n - 1)); ++col) {
    std::vector<std::uint64_t> rows(prefix);
    for (std::size_t i = 0; i + 1 < n; ++i) rows[i] |= ((col >> i) & 1U) << (n - 1);
    rows[n - 1] |= std::uint64_t{1} << (n - 1);
    hits += cantorian::is_cantorian(Tableau::from_packed(n, rows)).cantorian;
  }
  return hits;
}

std::vector<std::uint64_t> random_prefix(std::size_t n, CounterRng& rng) {
  std::vector<std::uint64_t> rows(n);
  const std::uint64_t mask = (std::uint64_t{1} << (n - 1)) - 1;
  for (std::size_t i = 0; i + 1 < n; ++i) rows[i] = rng() & mask;
  rows[n - 1] = mask;
  return rows;
}

bool has_odd_cycle(const std::vector<std::pair<std::size_t, std::size_t>>& conds,
                   std::size_t n) {
  ParityUnionFind uf(n);
  for (auto [a, b] : conds) {
    if (!uf.unite(a, b, true)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("method names and shards") {
  CHECK(parse_method("brute") == CountMethod::brute);
  CHECK(parse_method("last-column") == CountMethod::last_column);
  CHECK(parse_method("last_column") == CountMethod::last_column);
  CHECK_FALSE(parse_method("fast").has_value());
  CHECK(to_string(CountMethod::normalized) == "normalized");
  const auto sh = parse_shard("2/5");
  CHECK(sh.index == 2);
  CHECK(sh.count == 5);
  CHECK_THROWS_AS(parse_shard("5/5"), Error);
  CHECK_THROWS_AS(parse_shard("1-2"), Error);
  CHECK_THROWS_AS(parse_shard("x/2"), Error);
}

TEST_CASE("small counts against the oracle") {
  CHECK(count_cantorian(1, 2).count == oracle_count(1, 2));
  CHECK(count_cantorian(2, 2).count == oracle_count(2, 2));
  CHECK(count_cantorian(3, 2).count == oracle_count(3, 2));
  CHECK(count_cantorian(2, 3).count == oracle_count(2, 3));
  CHECK(count_cantorian(2, 4).count == oracle_count(2, 4));
}

TEST_CASE("table values") {
  CHECK(count_cantorian(2, 2).count == 4);
  CHECK(count_cantorian(3, 2).count == 24);
  CHECK(count_cantorian(4, 2).count == 1744);
  CHECK(count_cantorian(3, 3).count == 5076);
  CHECK(count_cantorian(2, 3).count == 36);
  CHECK(count_cantorian(2, 4).count == 144);
  CHECK(count_cantorian(2, 5).count == 400);
  CHECK(count_cantorian(2, 6).count == 900);
  CHECK(count_cantorian(5, 2, {.method = CountMethod::last_column}).count == 88480);
}

TEST_CASE("methods agree") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto brute = count_cantorian(n, 2).count;
    CHECK(count_cantorian(n, 2, {.method = CountMethod::normalized}).count == brute);
    CHECK(count_cantorian(n, 2, {.method = CountMethod::last_column}).count == brute);
    CHECK(count_cantorian(n, 2, {.method = CountMethod::last_column, .skeleton = false}).count ==
          brute);
  }
  const auto five = count_cantorian(5, 2, {.method = CountMethod::normalized}).count;
  CHECK(five == count_cantorian(5, 2, {.method = CountMethod::last_column}).count);
  CHECK(five ==
        count_cantorian(5, 2, {.method = CountMethod::last_column, .skeleton = false}).count);
  CHECK_THROWS_AS(count_cantorian(3, 3, {.method = CountMethod::normalized}), Error);
}

TEST_CASE("shards sum to the total and jobs do not matter") {
  for (CountMethod m : {CountMethod::brute, CountMethod::normalized, CountMethod::last_column}) {
    const std::size_t n = m == CountMethod::brute ? 4 : 5;
    const auto whole = count_cantorian(n, 2, {.method = m});
    for (std::size_t parts : {2, 3, 7}) {
      BigInt sum = 0;
      for (std::size_t i = 0; i < parts; ++i) {
        sum += count_cantorian(n, 2, {.method = m, .shard = {i, parts}}).count;
      }
      CHECK(sum == whole.count);
    }
    CHECK(count_cantorian(n, 2, {.method = m, .jobs = 3}).count == whole.count);
  }
  BigInt sum = 0;
  for (std::size_t i = 0; i < 4; ++i) sum += count_by_occurrences(4, 7, {.shard = {i, 4}}).count;
  CHECK(sum == 384);
}

TEST_CASE("budget guard") {
  CHECK_THROWS_AS(count_cantorian(5, 2, {.budget = 1000}), Error);
  CHECK_THROWS_AS(count_cantorian(9, 2, {.method = CountMethod::last_column}), Error);
  CHECK(search_size(3, 2, CountMethod::brute) == 512);
  CHECK(search_size(3, 2, CountMethod::normalized) == 64);
  CHECK(search_size(3, 2, CountMethod::last_column) == 16);
}

TEST_CASE("prefix weight hook") {
  const auto plain = count_cantorian(5, 2, {.method = CountMethod::last_column}).count;
  CountOptions doubled{.method = CountMethod::last_column};
  doubled.prefix_weight = [](std::span<const std::uint64_t>, std::size_t) -> std::uint64_t {
    return 2;
  };
  CHECK(count_cantorian(5, 2, doubled).count == 2 * plain);

  // keep only prefixes whose first row is zero: equals a direct tally
  CountOptions filtered{.method = CountMethod::last_column};
  filtered.prefix_weight = [](std::span<const std::uint64_t> rows, std::size_t) -> std::uint64_t {
    return rows[0] == 0 ? 1 : 0;
  };
  BigInt expected = 0;
  const std::size_t n = 4;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << 6); ++code) {
    std::vector<std::uint64_t> prefix = {0, code & 7, code >> 3, 7};
    expected += last_column_count(prefix, n);
  }
  CHECK(count_cantorian(n, 2, filtered).count == expected * 16);
}

TEST_CASE("occurrence table rows") {
  const std::vector<std::vector<int>> table = {
      {},
      {},
      {0, 0, 4, 0, 0},
      {0, 0, 0, 3, 9, 9, 3, 0, 0, 0},
      {0, 0, 0, 0, 4, 0, 112, 384, 744, 384, 112, 0, 4, 0, 0, 0, 0},
  };
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto h = occurrence_histogram(n);
    REQUIRE(h.size() == n * n + 1);
    for (std::size_t p = 0; p < h.size(); ++p) {
      CHECK(h[p] == table[n][p]);
      CHECK(h[p] == h[n * n - p]);
    }
    BigInt total = 0;
    for (const auto& c : h) total += c;
    CHECK(total == count_cantorian(n, 2).count);
  }
  CHECK(count_by_occurrences(4, 6).count == 112);
  CHECK(count_by_occurrences(3, 4).count == 9);
  CHECK(count_by_occurrences(4, 3).count == 0);
  CHECK(count_by_occurrences(5, 8).count == 275);
  CHECK_THROWS_AS(count_by_occurrences(3, 10), Error);
}

TEST_CASE("occurrence closed forms") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto r = occurrence_closed_forms(n, {}, n <= 4);
    CHECK(r.all_hold());
    for (const auto& c : r.claims) CHECK(c.holds());
    if (n >= 3) CHECK(r.tail_witness_cantorian);
  }
  const auto five = occurrence_closed_forms(5);
  REQUIRE(five.claims.size() == 8);
  CHECK(five.claims[5].p == 5);
  CHECK(five.claims[5].actual == 5);

  // c(n, n) counts the row permutations of the single b-row tableau
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto t = single_b_row_tableau(n);
    CHECK(t.count(1) == n);
    CHECK(cantorian::is_cantorian(t).cantorian);
    CHECK(three_b_tail_tableau(n).count(1) == n + 3);
  }
}

TEST_CASE("bounds on Cantorian and non-Cantorian counts") {
  for (std::size_t n : {2, 4}) {
    const auto count = count_cantorian(n, 2, {.method = CountMethod::last_column}).count;
    CHECK(count >= power(2, n * n / 2));
    const std::size_t h = n / 2;
    std::set<std::vector<Symbol>> seen;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * h)); ++code) {
      std::vector<std::uint64_t> top(h);
      for (std::size_t i = 0; i < h; ++i) top[i] = (code >> (i * n)) & ((1U << n) - 1);
      const auto t = complement_completion(top, n);
      CHECK(cantorian::is_cantorian(t).cantorian);
      seen.emplace(t.entries().begin(), t.entries().end());
    }
    CHECK(BigInt(seen.size()) == power(2, n * n / 2));
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto c = count_cantorian(n, 2).count;
    CHECK(power(2, n * n) - c >= power(2, n * n - n + 1));
  }
  CHECK(count_cantorian(4, 2).count > power(2, 8));
  CHECK_THROWS_AS(complement_completion(std::vector<std::uint64_t>{1}, 3), Error);
}

TEST_CASE("log ratios") {
  const double expected[] = {0.5, 0.509, 0.673, 0.657};
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto c = count_cantorian(n, 2, {.method = CountMethod::last_column}).count;
    CHECK(std::round(log2_ratio(c, n) * 1000) / 1000 == doctest::Approx(expected[n - 2]));
  }
  CHECK(std::isinf(log2_ratio(0, 3)));
  BigInt huge = power(2, 200) * 3;
  CHECK(log2_ratio(huge, 10) == doctest::Approx((200 + std::log2(3.0)) / 100));
}

TEST_CASE("parity union find") {
  ParityUnionFind uf(3);
  CHECK(uf.components() == 3);
  CHECK(uf.unite(0, 1, true));
  CHECK(uf.unite(1, 2, true));
  CHECK_FALSE(uf.unite(2, 0, true));  // x0 != x1 != x2 != x0 is impossible
  uf.reset(4);
  CHECK(uf.components() == 4);
  CHECK(uf.unite(0, 1, true));
  CHECK(uf.unite(1, 2, true));
  CHECK(uf.unite(0, 2, false));
  CHECK(uf.components() == 2);
  CHECK(uf.size() == 4);
}

TEST_CASE("last column count against brute completion, 5x4 prefixes") {
  // The 1e5 sample runs in the acceptance binary.
  CounterRng rng(41, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto prefix = random_prefix(5, rng);
    CHECK(last_column_count(prefix, 5) == brute_last_column(prefix, 5));
  }
}

TEST_CASE("last column count, other sizes") {
  CounterRng rng(42, 0);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto prefix = random_prefix(n, rng);
      CHECK(last_column_count(prefix, n) == brute_last_column(prefix, n));
    }
  }
  const std::vector<std::uint64_t> one = {0};
  CHECK(last_column_count(one, 1) == 0);
  const std::vector<std::uint64_t> bad = {0, 0, 1};
  CHECK_THROWS_AS(last_column_count(bad, 3), Error);
}

TEST_CASE("condition systems") {
  CounterRng rng(43, 0);
  int free_systems = 0;
  int odd_systems = 0;
  for (std::size_t n = 3; n <= 7; ++n) {
    for (int trial = 0; trial < 3000; ++trial) {
      const auto prefix = random_prefix(n, rng);
      const auto conds = last_column_conditions(prefix, n);
      const auto count = last_column_count(prefix, n);
      if (conds.empty()) {
        ++free_systems;
        CHECK(count == std::uint64_t{1} << (n - 1));
      }
      if (has_odd_cycle(conds, n)) {
        ++odd_systems;
        CHECK(count == 0);
      }
      // the count is the number of solutions of the system with x_n = 1
      std::uint64_t solutions = 0;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n - 1)); ++x) {
        const std::uint64_t full = x | (std::uint64_t{1} << (n - 1));
        bool ok = true;
        for (auto [a, b] : conds) ok = ok && ((full >> a) & 1U) != ((full >> b) & 1U);
        solutions += ok;
      }
      CHECK(count == solutions);
    }
  }
  CHECK(free_systems > 0);
  CHECK(odd_systems > 0);
}
