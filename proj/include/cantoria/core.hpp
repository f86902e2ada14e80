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

#ifndef CANTORIA_CORE_HPP_
#define CANTORIA_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cantoria {

/// Alphabet symbols are the integers 0..s-1. Letters a, b, c... are accepted
/// on input as 0, 1, 2...
using Symbol = std::uint8_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  static constexpr int kMaxSize = 256;

  explicit Alphabet(int size);

  int size() const noexcept { return size_; }
  bool contains(int symbol) const noexcept {
    return symbol >= 0 && symbol < size_;
  }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int size_;
};

/// A finite word over an alphabet: rows, diagonals and permanent members.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  /// Digits and letters, one symbol per character ("0110", "abba").
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  /// Single characters for symbols below 10, space-separated decimals
  /// otherwise.
  std::string to_string() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Square n x n grid of symbols. Entry (i, j) is row i, column j, 0-based.
/// Immutable once built. For binary tableaux with n <= 64 the rows are also
/// kept as packed bit masks (bit j of packed_rows()[i] is entry (i, j)).
class Tableau {
 public:
  static constexpr std::size_t kMaxPackedSize = 64;

  Tableau(Alphabet alphabet, std::size_t n, std::vector<Symbol> entries);

  static Tableau from_rows(Alphabet alphabet, const std::vector<Word>& rows);
  /// Binary tableau from packed rows (bit j of rows[i] is entry (i, j)).
  static Tableau from_packed(std::size_t n, std::span<const std::uint64_t> rows);

  std::size_t size() const noexcept { return n_; }
  Alphabet alphabet() const noexcept { return alphabet_; }

  Symbol operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }

  std::span<const Symbol> entries() const noexcept { return entries_; }
  std::span<const Symbol> row_symbols(std::size_t row) const {
    return std::span<const Symbol>(entries_).subspan(row * n_, n_);
  }

  Word row(std::size_t i) const;
  Word column(std::size_t j) const;
  std::vector<Word> rows() const;
  std::vector<Word> columns() const;

  /// Empty unless the alphabet is binary and n <= 64.
  std::span<const std::uint64_t> packed_rows() const noexcept { return packed_; }

  std::size_t count(Symbol symbol) const;
  Tableau transposed() const;

  friend bool operator==(const Tableau& a, const Tableau& b) {
    return a.n_ == b.n_ && a.alphabet_ == b.alphabet_ &&
           a.entries_ == b.entries_;
  }

 private:
  Alphabet alphabet_;
  std::size_t n_;
  std::vector<Symbol> entries_;
  std::vector<std::uint64_t> packed_;
};

// The three transforms preserving the Cantorian property.

/// New row i is old row order[i].
struct RowPermutation {
  std::vector<std::size_t> order;
};
/// New column j is old column order[j].
struct ColumnPermutation {
  std::vector<std::size_t> order;
};
/// Replaces every entry x of `column` by image[x].
struct ColumnBijection {
  std::size_t column;
  std::vector<Symbol> image;
};

using Transform = std::variant<RowPermutation, ColumnPermutation, ColumnBijection>;

Tableau apply_transform(const Tableau& tableau, const Transform& transform);

struct FlipNormalForm {
  Tableau tableau;
  std::vector<bool> flipped;  // flipped[j]: column j was complemented
};

/// Complements every column whose last-row entry is 0, so the last row
/// becomes all 1s. Binary alphabets only.
FlipNormalForm column_flip_normalize(const Tableau& tableau);

/// Parses n lines of n symbols. A line is either a run of single-character
/// symbols ("0110", "abba") or whitespace-separated tokens ("0 11 3").
Tableau parse_tableau(std::string_view text, Alphabet alphabet);
/// As above, with the alphabet size inferred as max(2, largest symbol + 1).
Tableau parse_tableau(std::string_view text);

/// Rows separated by newlines, trailing newline included.
std::string serialize_tableau(const Tableau& tableau);

}  // namespace cantoria

#endif  // CANTORIA_CORE_HPP_
