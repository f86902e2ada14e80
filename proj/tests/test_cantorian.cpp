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

#include "cantoria/cantorian.hpp"
#include "cantoria/permanent.hpp"
#include "helpers.hpp"

using namespace cantoria;
using namespace cantoria::cantorian;
using testing::tab;
using testing::word;

namespace {

const char* kSixBySix = "aabaab\nbbabba\nababab\nbababa\nbbbabb\naaabaa";

void check_verdict(const Tableau& t) {
  const bool truth = oracle::cantorian(testing::grid(t));
  for (bool order : {true, false}) {
    const auto v = is_cantorian(t, {.diversity_order = order});
    REQUIRE(v.cantorian == truth);
    CHECK(v.witness.has_value() == !truth);
    if (v.witness) CHECK(witness_valid(t, *v.witness));
  }
}

std::vector<Symbol> random_derangement(std::size_t s, CounterRng& rng) {
  std::vector<Symbol> map(s);
  while (true) {
    for (auto& x : map) x = static_cast<Symbol>(rng.below(s));
    bool ok = true;
    for (std::size_t a = 0; a < s; ++a) ok = ok && map[a] != a;
    if (ok) return map;
  }
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(is_cantorian(tab("ab\nba")).cantorian);
  CHECK(is_cantorian(tab(kSixBySix)).cantorian);
  CHECK(is_cantorian(tab("aaaa\naaaa\nbbba\nbbbb")).cantorian);
  CHECK(is_cantorian(tab("aaaaa\naaaaa\nbbbab\nbbbba\nbbbbb")).cantorian);

  const auto t = tab("aba\nbab\nbbb");
  const auto v = is_cantorian(t);
  REQUIRE_FALSE(v.cantorian);
  REQUIRE(v.witness);
  CHECK(v.witness->row == 2);
  CHECK(witness_valid(t, *v.witness));
}

TEST_CASE("witness validation rejects bad witnesses") {
  const auto t = tab("aba\nbab\nbbb");
  CHECK_FALSE(witness_valid(t, {2, {0, 0, 1}}));
  CHECK_FALSE(witness_valid(t, {2, {0, 1}}));
  CHECK_FALSE(witness_valid(t, {0, {0, 1, 2}}));
  CHECK_FALSE(witness_valid(t, {5, {0, 1, 2}}));
}

TEST_CASE("exact against the definition, every binary 3x3 and ternary 2x2") {
  for (std::uint64_t index = 0; index < 512; ++index) check_verdict(testing::indexed(index, 3, 2));
  for (std::uint64_t index = 0; index < 81; ++index) check_verdict(testing::indexed(index, 2, 3));
  for (std::uint64_t index = 0; index < 16; ++index) check_verdict(testing::indexed(index, 2, 2));
  check_verdict(tab("a", 2));
}

TEST_CASE("exact against the definition, random 4x4 and 5x5") {
  // The full run of 1e5 per size lives in the acceptance binary.
  for (std::uint64_t trial = 0; trial < 4000; ++trial) {
    const std::size_t n = 4 + trial % 2;
    const int s = 2 + static_cast<int>(trial / 2 % 2);
    check_verdict(testing::random_tableau(n, s, 31, trial));
  }
}

TEST_CASE("packed and entry checkers agree with the verdict") {
  Checker checker;
  for (std::uint64_t trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const auto t = testing::random_tableau(n, 2, 32, trial);
    const bool truth = is_cantorian(t).cantorian;
    CHECK(checker.cantorian_packed(t.packed_rows(), n) == truth);
    CHECK(checker.cantorian_entries(t.entries(), n) == truth);
    const auto u = testing::random_tableau(n, 3, 33, trial);
    CHECK(checker.cantorian_entries(u.entries(), n) == is_cantorian(u).cantorian);
  }
}

TEST_CASE("large tableaux run through the general path") {
  const auto big = testing::random_tableau(80, 2, 34, 0);
  const auto v = is_cantorian(big);
  if (v.witness) CHECK(witness_valid(big, *v.witness));
  // 80 rows of zeros, then the last row is in the permanent
  std::vector<Symbol> zeros(80 * 80, 0);
  const Tableau flat(Alphabet(2), 80, zeros);
  CHECK_FALSE(is_cantorian(flat).cantorian);
}

TEST_CASE("sparse letter criterion") {
  const auto almost = tab("aaa\naab\naaa");
  REQUIRE(sparse_letter_check(almost).has_value());
  CHECK(*sparse_letter_check(almost) == 0);
  CHECK_FALSE(is_cantorian(almost).cantorian);
  CHECK(permanent::perm_contains(almost, word("aaa")).member);

  for (std::size_t n = 2; n <= 7; ++n) {
    std::vector<Symbol> e(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) e[(n - 1) * n + j] = 1;
    const Tableau single_b(Alphabet(2), n, e);
    CHECK_FALSE(sparse_letter_check(single_b).has_value());
    CHECK(is_cantorian(single_b).cantorian);
  }
  CHECK(sparse_letter_check(tab("aa\naa", 2)) == Symbol{0});
  CHECK_FALSE(is_cantorian(tab("aa\naa", 2)).cantorian);
}

TEST_CASE("sparse letter hits are never Cantorian") {
  int hits = 0;
  for (std::uint64_t trial = 0; trial < 5000; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const auto t = testing::random_tableau(n, 2 + static_cast<int>(trial % 3), 35, trial);
    if (const auto a = sparse_letter_check(t)) {
      ++hits;
      CHECK_FALSE(is_cantorian(t).cantorian);
      CHECK(permanent::perm_contains(t, Word(std::vector<Symbol>(n, *a))).member);
    }
  }
  CHECK(hits > 30);
}

TEST_CASE("sigma families") {
  CHECK_THROWS_AS(SigmaFamily(Alphabet(3), {{1, 1, 2}}), Error);
  CHECK_THROWS_AS(SigmaFamily(Alphabet(3), {{1, 0}}), Error);
  CHECK_THROWS_AS(SigmaFamily(Alphabet(2), {{1, 2}}), Error);
  const auto swap = SigmaFamily::binary_swap(2);
  CHECK(apply_sigma(tab("ab\nba"), swap) == tab("ba\nab"));
  CHECK(swap.apply(0, word("0110")) == word("1001"));
}

TEST_CASE("sigma condition holds for the binary swap") {
  for (std::uint64_t index = 0; index < 512; ++index) {
    const auto r = sigma_condition(testing::indexed(index, 3, 2), SigmaFamily::binary_swap(3));
    CHECK(r.perm_avoids_sigma_rows);
    CHECK(r.sigma_tableau_avoids_rows);
  }
}

TEST_CASE("sigma condition holds for random fixed-point-free families") {
  CounterRng rng(36, 0);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 3;
    const std::size_t s = 3 + trial % 2;
    std::vector<std::vector<Symbol>> maps;
    for (std::size_t i = 0; i < n; ++i) maps.push_back(random_derangement(s, rng));
    const SigmaFamily f(Alphabet(static_cast<int>(s)), maps);
    const auto t = testing::random_tableau(n, static_cast<int>(s), 37, trial);
    const auto r = sigma_condition(t, f);
    CHECK(r.perm_avoids_sigma_rows);
    CHECK(r.sigma_tableau_avoids_rows);
    // direct intersection with the oracle
    const auto perm = oracle::permanent(testing::grid(t));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(perm.count(testing::wordv(f.apply(i, t.row(i)))) == 0);
    }
  }
}

TEST_CASE("a sigma-closed row set is Cantorian") {
  int closed = 0;
  for (std::uint64_t index = 0; index < 512; ++index) {
    const auto t = testing::indexed(index, 3, 2);
    if (sigma_fixes_row_set(t, SigmaFamily::binary_swap(3))) {
      ++closed;
      CHECK(is_cantorian(t).cantorian);
    }
  }
  for (std::uint64_t index = 0; index < 65536; ++index) {
    const auto t = testing::indexed(index, 4, 2);
    if (sigma_fixes_row_set(t, SigmaFamily::binary_swap(4))) {
      ++closed;
      CHECK(is_cantorian(t).cantorian);
    }
  }
  CHECK(closed > 0);
}

TEST_CASE("complement pairings") {
  const auto six = tab(kSixBySix);
  const auto pairing = find_complement_pairing(six);
  REQUIRE(pairing);
  CHECK(*pairing == std::vector<std::size_t>{1, 0, 3, 2, 5, 4});

  const auto four = tab("aaaa\naaaa\nbbba\nbbbb");
  CHECK_FALSE(find_complement_pairing(four).has_value());
  CHECK(is_cantorian(four).cantorian);
}

TEST_CASE("a pairing implies Cantorian") {
  int paired = 0;
  for (std::uint64_t index = 0; index < 512; ++index) {
    const auto t = testing::indexed(index, 3, 2);
    if (find_complement_pairing(t)) {
      ++paired;
      CHECK(oracle::cantorian(testing::grid(t)));
    }
  }
  CHECK(paired > 0);
  for (std::uint64_t trial = 0; trial < 20000; ++trial) {
    const std::size_t n = 4 + trial % 3;
    const auto t = testing::random_tableau(n, 2 + static_cast<int>(trial % 2), 38, trial);
    if (const auto p = find_complement_pairing(t)) {
      ++paired;
      CHECK(is_cantorian(t).cantorian);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) CHECK(t(i, j) != t((*p)[i], j));
      }
    }
  }
}

TEST_CASE("bi-Cantorian") {
  CHECK(is_bi_cantorian(tab("ab\nba")));
  CHECK_FALSE(is_bi_cantorian(tab("aba\nbab\nbbb")));
  for (std::uint64_t index = 0; index < 512; ++index) {
    const auto t = testing::indexed(index, 3, 2);
    const auto perm = oracle::permanent(testing::grid(t));
    bool avoids = oracle::cantorian(testing::grid(t));
    for (std::size_t j = 0; j < 3; ++j) avoids = avoids && perm.count(testing::wordv(t.column(j))) == 0;
    CHECK(is_bi_cantorian(t) == avoids);
  }
}

TEST_CASE("complement block tableaux") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    const std::size_t h = 1 + trial % 4;
    const auto block = testing::random_tableau(h, 2, 39, trial);
    const auto t = complement_block_tableau(block);
    CHECK(t.size() == 2 * h);
    CHECK(is_cantorian(t).cantorian);
    CHECK(is_cantorian(t.transposed()).cantorian);
    // a symmetric block makes the column words rows, so both sets are avoided
    const auto sym = complement_block_tableau(
        Tableau::from_rows(Alphabet(2), [&] {
          std::vector<Word> rows;
          for (std::size_t i = 0; i < h; ++i) {
            std::vector<Symbol> r(h);
            for (std::size_t j = 0; j < h; ++j) r[j] = i <= j ? block(i, j) : block(j, i);
            rows.emplace_back(r);
          }
          return rows;
        }()));
    CHECK(is_bi_cantorian(sym));
  }
  // at least 2^(h*h) bi-Cantorian tableaux of size 2h, counted exhaustively for h = 2
  std::uint64_t bi = 0;
  for (std::uint64_t index = 0; index < 65536; ++index) bi += is_bi_cantorian(testing::indexed(index, 4, 2));
  CHECK(bi >= 16);
  CHECK_THROWS_AS(complement_block_tableau(tab("abc\nabc\nabc")), Error);
}

TEST_CASE("analyze collects every criterion") {
  const auto r = analyze(tab(kSixBySix));
  CHECK(r.verdict.cantorian);
  CHECK(r.complement_pairing.has_value());
  CHECK_FALSE(r.sparse_letter.has_value());
  const auto s = analyze(tab("aaa\naab\naaa"));
  CHECK_FALSE(s.verdict.cantorian);
  CHECK(s.sparse_letter.has_value());
}
