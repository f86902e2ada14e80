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

#include "cantoria/diagonal.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cantoria::diagonal {

PrefixList::PrefixList(Alphabet alphabet, std::size_t depth)
    : alphabet_(alphabet), depth_(depth) {
  if (depth == 0) throw Error("prefix depth must be at least 1");
}

PrefixList PrefixList::from_words(Alphabet alphabet, const std::vector<Word>& words) {
  if (words.empty()) throw Error("prefix list needs at least one word");
  PrefixList out(alphabet, words.front().size());
  for (const auto& w : words) out.add(w);
  return out;
}

void PrefixList::add(std::span<const Symbol> row) {
  if (row.size() != depth_) {
    throw Error("prefix has length " + std::to_string(row.size()) + ", expected " +
                std::to_string(depth_));
  }
  for (auto x : row) {
    if (!alphabet_.contains(x)) throw Error("prefix symbol outside the alphabet");
  }
  data_.insert(data_.end(), row.begin(), row.end());
}

Word PrefixList::word(std::size_t i) const {
  auto r = row(i);
  return Word(std::vector<Symbol>(r.begin(), r.end()));
}

PartialPermutation greedy_diagonal_permutation(const PrefixList& rows, const Word& target) {
  const std::size_t depth = rows.depth();
  if (target.size() != depth) throw Error("target length must equal the prefix depth");
  PartialPermutation out;
  out.depth = depth;
  std::vector<std::size_t> used;  // sorted
  for (std::size_t j = 0; j < depth; ++j) {
    std::size_t pick = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows(i, j) == target[j] && !std::binary_search(used.begin(), used.end(), i)) {
        pick = i;
        break;
      }
    }
    if (pick == rows.size()) break;
    out.rows.push_back(pick);
    used.insert(std::upper_bound(used.begin(), used.end(), pick), pick);
  }
  return out;
}

Word realized_diagonal(const PrefixList& rows, const PartialPermutation& p) {
  std::vector<Symbol> out(p.rows.size());
  for (std::size_t j = 0; j < p.rows.size(); ++j) out[j] = rows(p.rows[j], j);
  return Word(std::move(out));
}

bool is_partial_permutation(const PartialPermutation& p, std::size_t row_count) {
  if (p.rows.size() > p.depth) return false;
  std::vector<std::size_t> sorted = p.rows;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return sorted.empty() || sorted.back() < row_count;
}

AvoidResult avoid_list_permutation(const PrefixList& rows, const PrefixList& avoid) {
  if (avoid.size() > 0 && avoid.depth() != rows.depth()) {
    throw Error("avoid words must have the prefix depth");
  }
  const std::size_t depth = rows.depth();
  AvoidResult out;
  out.permutation.depth = depth;
  auto& assigned = out.permutation.rows;
  std::size_t start = 0;
  for (std::size_t k = 0; k < avoid.size(); ++k) {
    if (start >= depth || start >= rows.size()) {
      out.exhausted = true;
      return out;
    }
    std::size_t end = start;
    while (end < depth && rows(start, end) == avoid(k, end)) ++end;
    if (end == depth || end >= rows.size()) {
      out.exhausted = true;
      return out;
    }
    assigned.resize(end + 1);
    for (std::size_t c = start; c < end; ++c) assigned[c] = c + 1;
    assigned[end] = start;
    out.block_start.push_back(start);
    out.block_end.push_back(end);
    start = end + 1;
  }
  for (std::size_t c = start; c < depth && c < rows.size(); ++c) assigned.push_back(c);
  out.exhausted = assigned.size() < depth;
  return out;
}

Census digit_census(const Word& diagonal, std::size_t s) {
  Census out;
  out.counts.assign(s, 0);
  for (auto x : diagonal) {
    if (x >= s) throw Error("digit outside the alphabet");
    ++out.counts[x];
  }
  if (diagonal.size() > 0) {
    const Symbol last = diagonal[diagonal.size() - 1];
    std::size_t k = diagonal.size();
    while (k > 0 && diagonal[k - 1] == last) --k;
    out.constant_tail = diagonal.size() - k;
  }
  return out;
}

PrefixList rational_corpus(std::size_t s, std::size_t max_den, std::size_t depth,
                           bool double_expansions) {
  if (max_den == 0) throw Error("denominator bound must be positive");
  const Alphabet alphabet(static_cast<int>(s));
  PrefixList out(alphabet, depth);
  std::vector<Symbol> digits(depth);
  for (std::size_t q = 1; q <= max_den; ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      // Long division. A zero remainder afterwards means the expansion
      // terminates within the depth, so it also gets its (s-1)-tail form.
      std::size_t r = p;
      std::size_t last_nonzero = depth;
      for (std::size_t j = 0; j < depth; ++j) {
        r *= s;
        digits[j] = static_cast<Symbol>(r / q);
        r %= q;
        if (digits[j] != 0) last_nonzero = j;
      }
      out.add(digits);
      if (!double_expansions || p == 0) continue;
      if (r != 0) continue;
      --digits[last_nonzero];
      for (std::size_t j = last_nonzero + 1; j < depth; ++j) {
        digits[j] = static_cast<Symbol>(s - 1);
      }
      out.add(digits);
    }
  }
  if (double_expansions) {
    std::fill(digits.begin(), digits.end(), static_cast<Symbol>(s - 1));
    out.add(digits);
  }
  return out;
}

PrefixList periodic_corpus(std::size_t s, std::size_t max_preperiod, std::size_t max_period,
                           std::size_t depth) {
  if (max_period == 0) throw Error("period bound must be positive");
  const Alphabet alphabet(static_cast<int>(s));
  std::vector<Word> words;
  for (std::size_t pre = 0; pre <= max_preperiod; ++pre) {
    for (std::size_t per = 1; per <= max_period; ++per) {
      const std::size_t len = pre + per;
      std::vector<Symbol> seed(len, 0);
      while (true) {
        std::vector<Symbol> w(depth);
        for (std::size_t j = 0; j < depth; ++j) {
          w[j] = j < pre ? seed[j] : seed[pre + (j - pre) % per];
        }
        words.emplace_back(std::move(w));
        std::size_t c = 0;
        while (c < len && ++seed[c] == s) {
          seed[c] = 0;
          ++c;
        }
        if (c == len) break;
      }
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return PrefixList::from_words(alphabet, words);
}

PrefixList read_prefix_list(std::istream& in, Alphabet alphabet) {
  std::vector<Word> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    words.push_back(Word::parse(line));
  }
  return PrefixList::from_words(alphabet, words);
}

}  // namespace cantoria::diagonal
