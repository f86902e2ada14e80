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

#ifndef CANTORIA_PERMANENT_HPP_
#define CANTORIA_PERMANENT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cantoria/core.hpp"

namespace cantoria::permanent {

/// Sorted, deduplicated set of equal-length words.
class WordSet {
 public:
  WordSet() = default;
  /// Sorts and deduplicates; throws if lengths differ.
  explicit WordSet(std::vector<Word> words);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  bool contains(const Word& w) const;

  const std::vector<Word>& words() const noexcept { return words_; }
  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }

  WordSet union_with(const WordSet& other) const;
  WordSet intersection_with(const WordSet& other) const;

  friend bool operator==(const WordSet&, const WordSet&) = default;

 private:
  std::vector<Word> words_;
};

/// Distinct row words of a tableau.
WordSet row_set(const Tableau& t);
WordSet column_set(const Tableau& t);

/// Main diagonal a(0,0) a(1,1) ... a(n-1,n-1).
Word diag(const Tableau& t);

enum class PermMethod {
  brute,      // every permutation of the rows
  insertion,  // row-deletion recursion with letter insertion
};

struct PermOptions {
  PermMethod method = PermMethod::brute;
  std::size_t max_n = 10;
  /// Row deleted at the top level of the insertion recursion; deeper levels
  /// always delete their first remaining row.
  std::size_t deletion_row = 0;
};

/// All words a(pi(0),0) a(pi(1),1) ... a(pi(n-1),n-1) over permutations pi.
/// Throws when n exceeds options.max_n.
WordSet perm_set(const Tableau& t, const PermOptions& options = {});

struct Membership {
  bool member = false;
  /// When member: rows[j] is the row supplying column j, a permutation with
  /// t(rows[j], j) == w[j] for every j.
  std::vector<std::size_t> rows;
};

/// Decides w in Perm(t) through a perfect matching of the graph joining row
/// i to column j iff t(i, j) == w[j]. Polynomial in n.
Membership perm_contains(const Tableau& t, const Word& w);

/// Union of Perm(T) over every tableau whose rows are the m distinct words
/// of W, each used k_i >= 1 times with k_1 + ... + k_m = n, n the word
/// length. Requires m <= n.
WordSet perm_of_word_set(std::span<const Word> words, Alphabet alphabet,
                         std::size_t max_n = 10);

}  // namespace cantoria::permanent

#endif  // CANTORIA_PERMANENT_HPP_
