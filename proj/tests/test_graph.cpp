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

#include <set>

#include "cantoria/graph.hpp"
#include "cantoria/random.hpp"
#include "oracles.hpp"

using namespace cantoria;
using namespace cantoria::graph;

namespace {

using Adj = std::vector<std::vector<bool>>;

Adj random_adj(std::size_t top, std::size_t bottom, double p, CounterRng& rng) {
  Adj a(top, std::vector<bool>(bottom));
  for (auto& row : a) {
    for (std::size_t j = 0; j < bottom; ++j) row[j] = rng.unit() < p;
  }
  return a;
}

BipartiteGraph to_graph(const Adj& a, std::size_t bottom) {
  BipartiteGraph g(a.size(), bottom);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < bottom; ++j) {
      if (a[i][j]) g.add_edge(i, j);
    }
  }
  return g;
}

Digraph to_digraph(const Adj& a) {
  Digraph d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j]) d.add_edge(i, j);
    }
  }
  return d;
}

void check_matching(const BipartiteGraph& g, const Matching& m) {
  std::set<std::size_t> tops, bottoms;
  for (auto [u, v] : m) {
    CHECK(g.has_edge(u, v));
    CHECK(tops.insert(u).second);
    CHECK(bottoms.insert(v).second);
  }
}

bool valid_cycle(const Digraph& d, const std::vector<std::size_t>& cycle) {
  if (cycle.size() != d.size()) return false;
  std::set<std::size_t> seen(cycle.begin(), cycle.end());
  if (seen.size() != d.size()) return false;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (!d.has_edge(cycle[k], cycle[(k + 1) % cycle.size()])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bipartite graph basics") {
  BipartiteGraph g(3, 70);
  g.add_edge(0, 69);
  g.add_edge(2, 0);
  g.add_edge(2, 0);
  CHECK(g.words_per_row() == 2);
  CHECK(g.has_edge(0, 69));
  CHECK_FALSE(g.has_edge(1, 69));
  CHECK(g.edge_count() == 2);
}

TEST_CASE("matching size, every 3+3 graph") {
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    Adj a(3, std::vector<bool>(3));
    for (std::size_t b = 0; b < 9; ++b) a[b / 3][b % 3] = (mask >> b) & 1U;
    const auto g = to_graph(a, 3);
    const auto m = max_matching(g);
    check_matching(g, m);
    CHECK(m.size() == oracle::max_matching_by_hall(a, 3));
    CHECK(has_perfect_matching(g) == oracle::perfect_matching_by_permutations(a, 3));
  }
}

TEST_CASE("matching size, random graphs up to 8 vertices") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t top = 1 + rng.below(8);
    const std::size_t bottom = 1 + rng.below(8);
    const auto a = random_adj(top, bottom, 0.1 + 0.6 * rng.unit(), rng);
    const auto g = to_graph(a, bottom);
    const auto m = max_matching(g);
    check_matching(g, m);
    CHECK(m.size() == oracle::max_matching_by_hall(a, bottom));
    if (top == bottom) {
      CHECK(has_perfect_matching(g) == oracle::perfect_matching_by_permutations(a, bottom));
    } else {
      CHECK_FALSE(has_perfect_matching(g));
    }
  }
}

TEST_CASE("matching across word boundaries") {
  // 130 vertices each side, a shifted diagonal forces long augmenting paths.
  const std::size_t n = 130;
  BipartiteGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(i, i);
    if (i + 1 < n) g.add_edge(i, i + 1);
  }
  CHECK(has_perfect_matching(g));
  BipartiteGraph h(n, n);
  for (std::size_t i = 0; i < n; ++i) h.add_edge(i, i == 64 ? 63 : i);
  CHECK(max_matching(h).size() == n - 1);
}

TEST_CASE("warm start is honoured and then repaired") {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  MatchingEngine engine;
  const std::pair<std::size_t, std::size_t> bad[] = {{0, 0}};
  CHECK(engine.solve(g.adjacency(), 2, 2, g.words_per_row(), bad) == 2);
  CHECK(engine.mate_of_top()[0] == 1);
  CHECK(engine.mate_of_bottom()[0] == 1);
  // a non-edge in the warm start is dropped
  const std::pair<std::size_t, std::size_t> junk[] = {{1, 1}};
  CHECK(engine.solve(g.adjacency(), 2, 2, g.words_per_row(), junk) == 2);
}

TEST_CASE("hamiltonian cycles agree with brute force, n <= 7") {
  CounterRng rng(12, 0);
  for (int trial = 0; trial < 2500; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const auto a = random_adj(n, n, 0.15 + 0.6 * rng.unit(), rng);
    const auto d = to_digraph(a);
    const bool truth = oracle::hamiltonian(a);
    const auto r = find_hamiltonian_cycle(d);
    REQUIRE(r.status != HamiltonStatus::undecided);
    CHECK((r.status == HamiltonStatus::found) == truth);
    if (r.status == HamiltonStatus::found) CHECK(valid_cycle(d, r.cycle));
    CHECK(hamiltonian_by_subset_dp(d) == truth);
    CHECK(digraph_hamiltonian(d) == truth);
  }
}

TEST_CASE("hamiltonian by construction at larger n") {
  CounterRng rng(13, 0);
  for (std::size_t n : {20, 40, 64, 100}) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(order[i], order[rng.below(i + 1)]);
    Digraph d(n);
    for (std::size_t k = 0; k < n; ++k) d.add_edge(order[k], order[(k + 1) % n]);
    for (int extra = 0; extra < static_cast<int>(n); ++extra) {
      d.add_edge(rng.below(n), rng.below(n));
    }
    const auto r = find_hamiltonian_cycle(d);
    REQUIRE(r.status == HamiltonStatus::found);
    CHECK(valid_cycle(d, r.cycle));
  }
}

TEST_CASE("obstructions are reported as absent") {
  Digraph sink(5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 5; ++j) sink.add_edge(i, j);
  }
  CHECK(find_hamiltonian_cycle(sink).status == HamiltonStatus::absent);

  // two disjoint 3-cycles have a cycle cover but no Hamiltonian cycle
  Digraph split(6);
  for (std::size_t b : {0, 3}) {
    for (std::size_t k = 0; k < 3; ++k) split.add_edge(b + k, b + (k + 1) % 3);
  }
  CHECK(find_hamiltonian_cycle(split).status == HamiltonStatus::absent);
  CHECK_FALSE(hamiltonian_by_subset_dp(split));

  Digraph loop(1);
  CHECK_FALSE(digraph_hamiltonian(loop));
  loop.add_edge(0, 0);
  CHECK(digraph_hamiltonian(loop));
}

TEST_CASE("a hamiltonian digraph has a perfect double cover") {
  CounterRng rng(14, 0);
  int found = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const auto a = random_adj(n, n, 0.3 + 0.5 * rng.unit(), rng);
    const auto d = to_digraph(a);
    const auto cover = bipartite_double_cover(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(cover.has_edge(i, j) == (i != j && d.has_edge(i, j)));
      }
    }
    if (oracle::hamiltonian(a)) {
      ++found;
      CHECK(has_perfect_matching(cover));
    }
  }
  CHECK(found > 100);
}
