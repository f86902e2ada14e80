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

#include "cantoria/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace cantoria {

namespace {

bool is_permutation_of(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// -1 if `c` is not a symbol character.
int symbol_of_char(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a';
  return -1;
}

int symbol_of_token(std::string_view token) {
  if (token.size() == 1) return symbol_of_char(token[0]);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return -1;
  return value;
}

std::vector<int> parse_line(std::string_view line, bool single_token = false) {
  std::vector<int> out;
  if (single_token) {
    const int v = symbol_of_token(line);
    if (v < 0) throw Error("invalid symbol token '" + std::string(line) + "'");
    return {v};
  }
  bool tokenized = line.find_first_of(" \t") != std::string_view::npos;
  if (!tokenized) {
    for (char c : line) {
      int v = symbol_of_char(c);
      if (v < 0) throw Error("invalid symbol '" + std::string(1, c) + "'");
      out.push_back(v);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = line.size();
    auto token = line.substr(start, stop - start);
    int v = symbol_of_token(token);
    if (v < 0) throw Error("invalid symbol token '" + std::string(token) + "'");
    out.push_back(v);
    pos = stop;
  }
  return out;
}

std::vector<std::vector<int>> parse_grid(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto stop = text.find('\n', pos);
    if (stop == std::string_view::npos) stop = text.size();
    auto line = text.substr(pos, stop - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (!line.empty()) lines.push_back(line);
    pos = stop + 1;
  }
  if (lines.empty()) throw Error("empty tableau");
  // one line means a 1x1 tableau, so "12" is the symbol 12, not two digits
  std::vector<std::vector<int>> grid;
  for (auto line : lines) {
    const bool single = lines.size() == 1 && line.find_first_of(" \t") == std::string_view::npos;
    grid.push_back(parse_line(line, single));
  }
  for (const auto& row : grid) {
    if (row.size() != grid.size()) {
      throw Error("tableau is not square: " + std::to_string(grid.size()) +
                  " rows, a row of length " + std::to_string(row.size()));
    }
  }
  return grid;
}

}  // namespace

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > kMaxSize) {
    throw Error("alphabet size must be in [2, 256], got " + std::to_string(size));
  }
}

Word Word::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  for (int v : parse_line(text)) {
    if (v >= Alphabet::kMaxSize) throw Error("symbol out of range");
    symbols.push_back(static_cast<Symbol>(v));
  }
  return Word(std::move(symbols));
}

std::string Word::to_string() const {
  bool compact = std::all_of(symbols_.begin(), symbols_.end(),
                             [](Symbol x) { return x < 10; });
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (compact) {
      out.push_back(static_cast<char>('0' + symbols_[i]));
    } else {
      if (i) out.push_back(' ');
      out += std::to_string(symbols_[i]);
    }
  }
  return out;
}

Tableau::Tableau(Alphabet alphabet, std::size_t n, std::vector<Symbol> entries)
    : alphabet_(alphabet), n_(n), entries_(std::move(entries)) {
  if (n == 0) throw Error("tableau must have n >= 1");
  if (entries_.size() != n * n) {
    throw Error("tableau entries do not form an n x n grid");
  }
  for (auto x : entries_) {
    if (!alphabet_.contains(x)) {
      throw Error("symbol " + std::to_string(x) + " outside alphabet of size " +
                  std::to_string(alphabet_.size()));
    }
  }
  if (alphabet_.size() == 2 && n_ <= kMaxPackedSize) {
    packed_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (entries_[i * n_ + j]) packed_[i] |= std::uint64_t{1} << j;
      }
    }
  }
}

Tableau Tableau::from_rows(Alphabet alphabet, const std::vector<Word>& rows) {
  std::size_t n = rows.size();
  std::vector<Symbol> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error("tableau is not square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Tableau(alphabet, n, std::move(entries));
}

Tableau Tableau::from_packed(std::size_t n, std::span<const std::uint64_t> rows) {
  if (rows.size() != n || n > kMaxPackedSize) {
    throw Error("packed rows do not describe an n x n binary tableau");
  }
  std::vector<Symbol> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      entries[i * n + j] = static_cast<Symbol>((rows[i] >> j) & 1U);
    }
  }
  return Tableau(Alphabet(2), n, std::move(entries));
}

Word Tableau::row(std::size_t i) const {
  auto r = row_symbols(i);
  return Word(std::vector<Symbol>(r.begin(), r.end()));
}

Word Tableau::column(std::size_t j) const {
  std::vector<Symbol> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, j);
  return Word(std::move(out));
}

std::vector<Word> Tableau::rows() const {
  std::vector<Word> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(row(i));
  return out;
}

std::vector<Word> Tableau::columns() const {
  std::vector<Word> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) out.push_back(column(j));
  return out;
}

std::size_t Tableau::count(Symbol symbol) const {
  return static_cast<std::size_t>(
      std::count(entries_.begin(), entries_.end(), symbol));
}

Tableau Tableau::transposed() const {
  std::vector<Symbol> out(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[j * n_ + i] = (*this)(i, j);
  }
  return Tableau(alphabet_, n_, std::move(out));
}

Tableau apply_transform(const Tableau& tableau, const Transform& transform) {
  const std::size_t n = tableau.size();
  std::vector<Symbol> out(n * n);
  auto at = [&](std::size_t i, std::size_t j) -> Symbol& { return out[i * n + j]; };

  if (const auto* rp = std::get_if<RowPermutation>(&transform)) {
    if (!is_permutation_of(rp->order, n)) {
      throw Error("row permutation does not match tableau size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) at(i, j) = tableau(rp->order[i], j);
    }
  } else if (const auto* cp = std::get_if<ColumnPermutation>(&transform)) {
    if (!is_permutation_of(cp->order, n)) {
      throw Error("column permutation does not match tableau size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) at(i, j) = tableau(i, cp->order[j]);
    }
  } else {
    const auto& cb = std::get<ColumnBijection>(transform);
    const auto s = static_cast<std::size_t>(tableau.alphabet().size());
    if (cb.column >= n) throw Error("column bijection targets a missing column");
    if (cb.image.size() != s) {
      throw Error("column bijection does not match alphabet size");
    }
    std::vector<bool> hit(s, false);
    for (auto y : cb.image) {
      if (y >= s || hit[y]) throw Error("column map is not a bijection");
      hit[y] = true;
    }
    std::copy(tableau.entries().begin(), tableau.entries().end(), out.begin());
    for (std::size_t i = 0; i < n; ++i) {
      at(i, cb.column) = cb.image[tableau(i, cb.column)];
    }
  }
  return Tableau(tableau.alphabet(), n, std::move(out));
}

FlipNormalForm column_flip_normalize(const Tableau& tableau) {
  if (tableau.alphabet().size() != 2) {
    throw Error("column flips need a binary alphabet");
  }
  const std::size_t n = tableau.size();
  std::vector<bool> flipped(n, false);
  std::vector<Symbol> out(tableau.entries().begin(), tableau.entries().end());
  for (std::size_t j = 0; j < n; ++j) {
    if (tableau(n - 1, j) == 0) {
      flipped[j] = true;
      for (std::size_t i = 0; i < n; ++i) out[i * n + j] ^= 1U;
    }
  }
  return {Tableau(tableau.alphabet(), n, std::move(out)), std::move(flipped)};
}

Tableau parse_tableau(std::string_view text, Alphabet alphabet) {
  auto grid = parse_grid(text);
  const std::size_t n = grid.size();
  std::vector<Symbol> entries;
  entries.reserve(n * n);
  for (const auto& row : grid) {
    for (int v : row) {
      if (!alphabet.contains(v)) {
        throw Error("symbol " + std::to_string(v) + " outside alphabet of size " +
                    std::to_string(alphabet.size()));
      }
      entries.push_back(static_cast<Symbol>(v));
    }
  }
  return Tableau(alphabet, n, std::move(entries));
}

Tableau parse_tableau(std::string_view text) {
  auto grid = parse_grid(text);
  int largest = 0;
  for (const auto& row : grid) {
    for (int v : row) largest = std::max(largest, v);
  }
  return parse_tableau(text, Alphabet(std::max(2, largest + 1)));
}

std::string serialize_tableau(const Tableau& tableau) {
  const bool compact = tableau.alphabet().size() <= 10;
  std::string out;
  for (std::size_t i = 0; i < tableau.size(); ++i) {
    for (std::size_t j = 0; j < tableau.size(); ++j) {
      if (compact) {
        out.push_back(static_cast<char>('0' + tableau(i, j)));
      } else {
        if (j) out.push_back(' ');
        out += std::to_string(tableau(i, j));
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace cantoria
