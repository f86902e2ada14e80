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

#ifndef CANTORIA_TESTS_HELPERS_HPP_
#define CANTORIA_TESTS_HELPERS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "cantoria/core.hpp"
#include "cantoria/random.hpp"
#include "oracles.hpp"

namespace testing {

inline cantoria::Tableau tab(std::string_view text) { return cantoria::parse_tableau(text); }

inline cantoria::Tableau tab(std::string_view text, int s) {
  return cantoria::parse_tableau(text, cantoria::Alphabet(s));
}

inline cantoria::Word word(std::string_view text) { return cantoria::Word::parse(text); }

inline oracle::Grid grid(const cantoria::Tableau& t) {
  oracle::Grid g(t.size(), oracle::WordV(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) g[i][j] = t(i, j);
  }
  return g;
}

inline oracle::WordV wordv(const cantoria::Word& w) { return oracle::WordV(w.begin(), w.end()); }

inline cantoria::Tableau from_grid(const oracle::Grid& g, int s) {
  std::vector<cantoria::Symbol> e;
  for (const auto& row : g) {
    for (int x : row) e.push_back(static_cast<cantoria::Symbol>(x));
  }
  return cantoria::Tableau(cantoria::Alphabet(s), g.size(), std::move(e));
}

inline cantoria::Tableau indexed(std::uint64_t index, std::size_t n, int s) {
  return from_grid(oracle::grid_from_index(index, n, s), s);
}

inline cantoria::Tableau random_tableau(std::size_t n, int s, std::uint64_t seed,
                                        std::uint64_t stream) {
  cantoria::CounterRng rng(seed, stream);
  std::vector<cantoria::Symbol> e(n * n);
  for (auto& x : e) x = static_cast<cantoria::Symbol>(rng.below(static_cast<std::uint64_t>(s)));
  return cantoria::Tableau(cantoria::Alphabet(s), n, std::move(e));
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace testing

#endif  // CANTORIA_TESTS_HELPERS_HPP_
