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

#include "cantoria/permanent.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "cantoria/graph.hpp"

namespace cantoria::permanent {

namespace {

void normalize(std::vector<Word>& words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

// Words packed as base-s integers when s^n fits in 64 bits.
bool packable(std::size_t n, int s) {
  long double capacity = 1;
  for (std::size_t i = 0; i < n; ++i) capacity *= s;
  return capacity <= 18446744073709551615.0L;
}

WordSet perm_brute(const Tableau& t) {
  const std::size_t n = t.size();
  const int s = t.alphabet().size();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});

  if (packable(n, s)) {
    std::vector<std::uint64_t> codes;
    do {
      std::uint64_t code = 0;
      for (std::size_t j = n; j-- > 0;) code = code * s + t(rows[j], j);
      codes.push_back(code);
    } while (std::next_permutation(rows.begin(), rows.end()));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<Word> words;
    words.reserve(codes.size());
    for (auto code : codes) {
      std::vector<Symbol> symbols(n);
      for (std::size_t j = 0; j < n; ++j) {
        symbols[j] = static_cast<Symbol>(code % s);
        code /= s;
      }
      words.emplace_back(std::move(symbols));
    }
    return WordSet(std::move(words));
  }

  std::vector<Word> words;
  do {
    std::vector<Symbol> symbols(n);
    for (std::size_t j = 0; j < n; ++j) symbols[j] = t(rows[j], j);
    words.emplace_back(std::move(symbols));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return WordSet(std::move(words));
}

// Permanent of the sub-tableau on `rows` x `cols`, deleting rows[delete_at]
// and inserting its letter at every column position.
std::vector<Word> perm_insertion(const Tableau& t, const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols,
                                 std::size_t delete_at) {
  if (rows.size() == 1) return {Word({t(rows[0], cols[0])})};
  const std::size_t deleted = rows[delete_at];
  std::vector<std::size_t> sub_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r != delete_at) sub_rows.push_back(rows[r]);
  }
  std::vector<Word> out;
  for (std::size_t pos = 0; pos < cols.size(); ++pos) {
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c != pos) sub_cols.push_back(cols[c]);
    }
    const Symbol letter = t(deleted, cols[pos]);
    for (const auto& w : perm_insertion(t, sub_rows, sub_cols, 0)) {
      std::vector<Symbol> symbols(w.begin(), w.end());
      symbols.insert(symbols.begin() + static_cast<std::ptrdiff_t>(pos), letter);
      out.emplace_back(std::move(symbols));
    }
  }
  normalize(out);
  return out;
}

}  // namespace

WordSet::WordSet(std::vector<Word> words) : words_(std::move(words)) {
  for (const auto& w : words_) {
    if (w.size() != words_.front().size()) throw Error("word set lengths differ");
  }
  normalize(words_);
}

bool WordSet::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

WordSet WordSet::union_with(const WordSet& other) const {
  std::vector<Word> out;
  std::set_union(words_.begin(), words_.end(), other.words_.begin(), other.words_.end(),
                 std::back_inserter(out));
  return WordSet(std::move(out));
}

WordSet WordSet::intersection_with(const WordSet& other) const {
  std::vector<Word> out;
  std::set_intersection(words_.begin(), words_.end(), other.words_.begin(),
                        other.words_.end(), std::back_inserter(out));
  return WordSet(std::move(out));
}

WordSet row_set(const Tableau& t) { return WordSet(t.rows()); }

WordSet column_set(const Tableau& t) { return WordSet(t.columns()); }

Word diag(const Tableau& t) {
  std::vector<Symbol> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t(i, i);
  return Word(std::move(out));
}

WordSet perm_set(const Tableau& t, const PermOptions& options) {
  const std::size_t n = t.size();
  if (n > options.max_n) {
    throw Error("permanent enumeration capped at n = " + std::to_string(options.max_n));
  }
  if (options.method == PermMethod::brute) return perm_brute(t);
  if (options.deletion_row >= n) throw Error("deletion row out of range");
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return WordSet(perm_insertion(t, all, all, options.deletion_row));
}

Membership perm_contains(const Tableau& t, const Word& w) {
  const std::size_t n = t.size();
  if (w.size() != n) throw Error("word length does not match tableau size");
  graph::BipartiteGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t(i, j) == w[j]) g.add_edge(i, j);
    }
  }
  graph::MatchingEngine engine;
  if (engine.solve(g) != n) return {};
  Membership out;
  out.member = true;
  out.rows.resize(n);
  auto mates = engine.mate_of_bottom();
  for (std::size_t j = 0; j < n; ++j) out.rows[j] = static_cast<std::size_t>(mates[j]);
  return out;
}

WordSet perm_of_word_set(std::span<const Word> words, Alphabet alphabet,
                         std::size_t max_n) {
  if (words.empty()) throw Error("word set is empty");
  const std::size_t n = words.front().size();
  const std::size_t m = words.size();
  for (const auto& w : words) {
    if (w.size() != n) throw Error("words have different lengths");
  }
  if (WordSet(std::vector<Word>(words.begin(), words.end())).size() != m) {
    throw Error("words must be distinct");
  }
  if (m > n) throw Error("more words than the word length");

  // Multiplicities k_i >= 1 summing to n, enumerated as compositions.
  WordSet out;
  std::vector<std::size_t> k(m, 1);
  k[m - 1] = n - (m - 1);
  while (true) {
    std::vector<Word> rows;
    for (std::size_t i = 0; i < m; ++i) rows.insert(rows.end(), k[i], words[i]);
    out = out.union_with(perm_set(Tableau::from_rows(alphabet, rows), {.max_n = max_n}));
    // Next composition: move one unit from the last part to an earlier one.
    std::size_t i = m - 1;
    while (i > 0 && k[i] == 1) --i;
    if (i == 0) break;
    // k[i] > 1: take one from k[i], give it to k[i - 1], and gather every
    // part after i - 1 back into the last position.
    --k[i];
    ++k[i - 1];
    std::size_t rest = 0;
    for (std::size_t r = i; r < m; ++r) rest += k[r];
    for (std::size_t r = i; r < m; ++r) k[r] = 1;
    k[m - 1] = rest - (m - 1 - i);
  }
  return out;
}

}  // namespace cantoria::permanent
