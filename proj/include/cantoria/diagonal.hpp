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

#ifndef CANTORIA_DIAGONAL_HPP_
#define CANTORIA_DIAGONAL_HPP_

// Diagonal constructions over infinitely many rows, cut off at a finite
// depth. Nothing here proves a statement about infinite words; outcomes are
// "realized up to depth D" or "ran out of rows or columns".

#include <cstddef>
#include <istream>
#include <span>
#include <vector>

#include "cantoria/core.hpp"

namespace cantoria::diagonal {

/// Ordered list of equal-length prefixes of infinite rows.
class PrefixList {
 public:
  PrefixList(Alphabet alphabet, std::size_t depth);

  static PrefixList from_words(Alphabet alphabet, const std::vector<Word>& words);

  void add(std::span<const Symbol> row);
  void add(const Word& row) { add(row.symbols()); }

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return depth_ == 0 ? 0 : data_.size() / depth_; }
  Symbol operator()(std::size_t row, std::size_t col) const { return data_[row * depth_ + col]; }
  std::span<const Symbol> row(std::size_t i) const {
    return std::span<const Symbol>(data_).subspan(i * depth_, depth_);
  }
  Word word(std::size_t i) const;

 private:
  Alphabet alphabet_;
  std::size_t depth_;
  std::vector<Symbol> data_;
};

/// Column j of the diagonal is read from row rows[j], for j < rows.size().
struct PartialPermutation {
  std::vector<std::size_t> rows;
  std::size_t depth = 0;  // columns requested

  std::size_t progress() const noexcept { return rows.size(); }
  bool complete() const noexcept { return rows.size() == depth; }
};

/// Column by column, the least unused row whose digit matches the target.
/// Stops at the first column with no candidate.
PartialPermutation greedy_diagonal_permutation(const PrefixList& rows, const Word& target);

/// Digits a(rows[j], j) for the assigned columns.
Word realized_diagonal(const PrefixList& rows, const PartialPermutation& p);

/// Injective, in range, and within the list's depth.
bool is_partial_permutation(const PartialPermutation& p, std::size_t row_count);

struct AvoidResult {
  PartialPermutation permutation;
  /// Block k covers columns [block_start[k], block_end[k]] and the diagonal
  /// differs from avoid word k at block_end[k].
  std::vector<std::size_t> block_start;
  std::vector<std::size_t> block_end;
  /// True when rows or depth ran out before every avoid word was handled.
  bool exhausted = false;
};

/// Block construction: a block starting at column b takes row b, finds the
/// first column e >= b where that row differs from the next avoid word,
/// places row b at column e and rows b+1..e at columns b..e-1. After the
/// last avoid word the identity continues up to the depth.
AvoidResult avoid_list_permutation(const PrefixList& rows, const PrefixList& avoid);

struct Census {
  std::vector<std::size_t> counts;  // per digit
  std::size_t constant_tail = 0;    // length of the final run
};

Census digit_census(const Word& diagonal, std::size_t s);

/// Base-s expansions of the reduced fractions p/q in [0, 1), q <= max_den,
/// ordered by q then p. With double_expansions every terminating expansion
/// also appears in its (s-1)-tail form, and 1 appears as (s-1)(s-1)...
PrefixList rational_corpus(std::size_t s, std::size_t max_den, std::size_t depth,
                           bool double_expansions = true);

/// Distinct prefixes of the words v u u u ... with |v| <= max_preperiod and
/// 1 <= |u| <= max_period, in lexicographic order.
PrefixList periodic_corpus(std::size_t s, std::size_t max_preperiod, std::size_t max_period,
                           std::size_t depth);

/// One word per non-blank line, all the same length.
PrefixList read_prefix_list(std::istream& in, Alphabet alphabet);

}  // namespace cantoria::diagonal

#endif  // CANTORIA_DIAGONAL_HPP_
