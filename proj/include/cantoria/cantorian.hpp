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

#ifndef CANTORIA_CANTORIAN_HPP_
#define CANTORIA_CANTORIAN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cantoria/core.hpp"
#include "cantoria/graph.hpp"

namespace cantoria::cantorian {

/// Row `row` of the tableau equals a(rows[0], 0) ... a(rows[n-1], n-1).
struct Witness {
  std::size_t row = 0;
  std::vector<std::size_t> rows;
};

/// A tableau is Cantorian when no row word is a permuted diagonal.
struct Verdict {
  bool cantorian = true;
  std::optional<Witness> witness;  // present iff !cantorian
};

struct CheckOptions {
  /// Try rows with fewer distinct letters first. Never changes the verdict,
  /// only which witness row is reported.
  bool diversity_order = true;
};

/// Exact test: row k is a permuted diagonal iff the bipartite graph joining
/// row i to column j whenever a(i, j) == a(k, j) has a perfect matching.
Verdict is_cantorian(const Tableau& t, const CheckOptions& options = {});

/// Substitutes the witness back into the tableau.
bool witness_valid(const Tableau& t, const Witness& w);

/// Allocation-free verdicts for enumeration loops. One instance per thread.
class Checker {
 public:
  /// Binary tableau as packed rows, n <= 64; bit j of rows[i] is a(i, j).
  bool cantorian_packed(std::span<const std::uint64_t> rows, std::size_t n);
  /// Row-major entries of an n x n tableau, n <= 64, any alphabet.
  bool cantorian_entries(std::span<const Symbol> entries, std::size_t n);

 private:
  bool row_matchable(std::size_t k, std::size_t n);

  graph::MatchingEngine engine_;
  std::vector<std::uint64_t> adjacency_;
  std::vector<std::uint64_t> scratch_;
};

/// A letter occurring at least n^2 - n + 1 times, if any; a^n is then both
/// a row and a permuted diagonal.
std::optional<Symbol> sparse_letter_check(const Tableau& t);

/// One fixed-point-free map per row: maps[i][a] != a for every letter a.
class SigmaFamily {
 public:
  SigmaFamily(Alphabet alphabet, std::vector<std::vector<Symbol>> maps);

  /// The same map for all n rows.
  static SigmaFamily uniform(Alphabet alphabet, std::size_t n, std::vector<Symbol> map);
  /// Binary swap on every row, the only admissible map for s = 2.
  static SigmaFamily binary_swap(std::size_t n);

  std::size_t size() const noexcept { return maps_.size(); }
  Alphabet alphabet() const noexcept { return alphabet_; }
  Symbol apply(std::size_t row, Symbol a) const { return maps_[row][a]; }
  Word apply(std::size_t row, const Word& w) const;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Symbol>> maps_;
};

/// The tableau whose row i is sigma_i applied to row i.
Tableau apply_sigma(const Tableau& t, const SigmaFamily& f);

struct SigmaReport {
  bool perm_avoids_sigma_rows = false;     // Perm(T) and {sigma_i l_i} disjoint
  bool sigma_tableau_avoids_rows = false;  // Perm(sigma T) and L disjoint
};

/// Both flags are always true for a valid family; this checks it.
SigmaReport sigma_condition(const Tableau& t, const SigmaFamily& f);

/// True when {sigma_i l_i} equals the row set, which makes T Cantorian.
bool sigma_fixes_row_set(const Tableau& t, const SigmaFamily& f);

/// For each row i the first row i' that disagrees with it in every column.
/// Present only if every row has such a partner, which makes T Cantorian.
std::optional<std::vector<std::size_t>> find_complement_pairing(const Tableau& t);

/// Perm(T) avoids both the row words and the column words.
bool is_bi_cantorian(const Tableau& t);

/// Binary n x n tableau [[A, ~A], [~A, A]] from an h x h block A, n = 2h.
/// Rows and columns both pair off by complementation, so the tableau and its
/// transpose are Cantorian.
Tableau complement_block_tableau(const Tableau& block);

/// Which criteria decide a tableau.
struct CriteriaReport {
  std::optional<Symbol> sparse_letter;
  std::optional<std::vector<std::size_t>> complement_pairing;
  Verdict verdict;
};

CriteriaReport analyze(const Tableau& t, const CheckOptions& options = {});

}  // namespace cantoria::cantorian

#endif  // CANTORIA_CANTORIAN_HPP_
