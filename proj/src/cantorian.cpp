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

#include "cantoria/cantorian.hpp"

#include <algorithm>
#include <numeric>

#include "cantoria/permanent.hpp"

namespace cantoria::cantorian {

namespace {

std::size_t distinct_letters(std::span<const Symbol> row) {
  std::vector<bool> seen(256, false);
  std::size_t count = 0;
  for (auto x : row) {
    if (!seen[x]) {
      seen[x] = true;
      ++count;
    }
  }
  return count;
}

}  // namespace

Verdict is_cantorian(const Tableau& t, const CheckOptions& options) {
  const std::size_t n = t.size();
  const std::size_t words = graph::words_for(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.diversity_order) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return distinct_letters(t.row_symbols(a)) < distinct_letters(t.row_symbols(b));
    });
  }

  graph::MatchingEngine engine;
  std::vector<std::uint64_t> adjacency(n * words);
  for (std::size_t k : order) {
    std::fill(adjacency.begin(), adjacency.end(), 0);
    bool isolated = false;
    for (std::size_t i = 0; i < n && !isolated; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (t(i, j) == t(k, j)) {
          adjacency[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
          any = true;
        }
      }
      isolated = !any;
    }
    if (isolated) continue;
    // Row k always covers its own column n-1; seed the matching with it.
    const std::pair<std::size_t, std::size_t> warm[] = {{k, n - 1}};
    if (engine.solve(adjacency, n, n, words, warm) == n) {
      Witness w;
      w.row = k;
      w.rows.resize(n);
      auto mates = engine.mate_of_bottom();
      for (std::size_t j = 0; j < n; ++j) w.rows[j] = static_cast<std::size_t>(mates[j]);
      return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

bool witness_valid(const Tableau& t, const Witness& w) {
  const std::size_t n = t.size();
  if (w.row >= n || w.rows.size() != n) return false;
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = w.rows[j];
    if (i >= n || used[i]) return false;
    used[i] = true;
    if (t(i, j) != t(w.row, j)) return false;
  }
  return true;
}

bool Checker::row_matchable(std::size_t k, std::size_t n) {
  const std::pair<std::size_t, std::size_t> warm[] = {{k, n - 1}};
  return engine_.solve(adjacency_, n, n, 1, warm) == n;
}

bool Checker::cantorian_packed(std::span<const std::uint64_t> rows, std::size_t n) {
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  adjacency_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    bool isolated = false;
    for (std::size_t i = 0; i < n; ++i) {
      adjacency_[i] = ~(rows[i] ^ rows[k]) & full;
      isolated |= adjacency_[i] == 0;
    }
    if (!isolated && row_matchable(k, n)) return false;
  }
  return true;
}

bool Checker::cantorian_entries(std::span<const Symbol> entries, std::size_t n) {
  adjacency_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Symbol* row_k = entries.data() + k * n;
    bool isolated = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Symbol* row_i = entries.data() + i * n;
      std::uint64_t bits = 0;
      for (std::size_t j = 0; j < n; ++j) {
        bits |= static_cast<std::uint64_t>(row_i[j] == row_k[j]) << j;
      }
      adjacency_[i] = bits;
      isolated |= bits == 0;
    }
    if (!isolated && row_matchable(k, n)) return false;
  }
  return true;
}

std::optional<Symbol> sparse_letter_check(const Tableau& t) {
  const std::size_t n = t.size();
  const std::size_t threshold = n * n - n + 1;
  std::vector<std::size_t> counts(static_cast<std::size_t>(t.alphabet().size()), 0);
  for (auto x : t.entries()) ++counts[x];
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] >= threshold) return static_cast<Symbol>(a);
  }
  return std::nullopt;
}

SigmaFamily::SigmaFamily(Alphabet alphabet, std::vector<std::vector<Symbol>> maps)
    : alphabet_(alphabet), maps_(std::move(maps)) {
  const auto s = static_cast<std::size_t>(alphabet_.size());
  for (const auto& map : maps_) {
    if (map.size() != s) throw Error("sigma map does not cover the alphabet");
    for (std::size_t a = 0; a < s; ++a) {
      if (map[a] >= s) throw Error("sigma map leaves the alphabet");
      if (map[a] == a) {
        throw Error("sigma map has a fixed point at " + std::to_string(a));
      }
    }
  }
}

SigmaFamily SigmaFamily::uniform(Alphabet alphabet, std::size_t n, std::vector<Symbol> map) {
  return SigmaFamily(alphabet, std::vector<std::vector<Symbol>>(n, map));
}

SigmaFamily SigmaFamily::binary_swap(std::size_t n) {
  return uniform(Alphabet(2), n, {1, 0});
}

Word SigmaFamily::apply(std::size_t row, const Word& w) const {
  std::vector<Symbol> out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) out[j] = maps_[row][w[j]];
  return Word(std::move(out));
}

Tableau apply_sigma(const Tableau& t, const SigmaFamily& f) {
  const std::size_t n = t.size();
  if (f.size() != n) throw Error("sigma family size does not match tableau");
  if (f.alphabet() != t.alphabet()) throw Error("sigma family alphabet mismatch");
  std::vector<Symbol> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = f.apply(i, t(i, j));
  }
  return Tableau(t.alphabet(), n, std::move(out));
}

SigmaReport sigma_condition(const Tableau& t, const SigmaFamily& f) {
  const auto sigma_t = apply_sigma(t, f);
  SigmaReport report{true, true};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (permanent::perm_contains(t, sigma_t.row(i)).member) {
      report.perm_avoids_sigma_rows = false;
    }
    if (permanent::perm_contains(sigma_t, t.row(i)).member) {
      report.sigma_tableau_avoids_rows = false;
    }
  }
  return report;
}

bool sigma_fixes_row_set(const Tableau& t, const SigmaFamily& f) {
  return permanent::row_set(apply_sigma(t, f)) == permanent::row_set(t);
}

std::optional<std::vector<std::size_t>> find_complement_pairing(const Tableau& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> partner(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t other = 0; other < n && !found; ++other) {
      bool disagrees = true;
      for (std::size_t j = 0; j < n && disagrees; ++j) {
        disagrees = t(i, j) != t(other, j);
      }
      if (disagrees) {
        partner[i] = other;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return partner;
}

bool is_bi_cantorian(const Tableau& t) {
  if (!is_cantorian(t).cantorian) return false;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (permanent::perm_contains(t, t.column(j)).member) return false;
  }
  return true;
}

Tableau complement_block_tableau(const Tableau& block) {
  if (block.alphabet().size() != 2) throw Error("complement block needs a binary alphabet");
  const std::size_t h = block.size();
  const std::size_t n = 2 * h;
  std::vector<Symbol> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool flip = (i >= h) != (j >= h);
      out[i * n + j] = static_cast<Symbol>(block(i % h, j % h) ^ (flip ? 1U : 0U));
    }
  }
  return Tableau(Alphabet(2), n, std::move(out));
}

CriteriaReport analyze(const Tableau& t, const CheckOptions& options) {
  return {sparse_letter_check(t), find_complement_pairing(t), is_cantorian(t, options)};
}

}  // namespace cantoria::cantorian
