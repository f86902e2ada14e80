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

#include <algorithm>
#include <bit>
#include <limits>

#include "cantoria/core.hpp"
#include "cantoria/graph.hpp"

namespace cantoria::graph {

namespace {
constexpr int kUnreached = std::numeric_limits<int>::max();
}

BipartiteGraph::BipartiteGraph(std::size_t n_top, std::size_t n_bottom)
    : n_top_(n_top),
      n_bottom_(n_bottom),
      words_(words_for(n_bottom)),
      bits_(n_top * words_for(n_bottom), 0) {}

void BipartiteGraph::add_edge(std::size_t top, std::size_t bottom) {
  if (top >= n_top_ || bottom >= n_bottom_) throw Error("edge endpoint out of range");
  bits_[top * words_ + bottom / 64] |= std::uint64_t{1} << (bottom % 64);
}

bool BipartiteGraph::has_edge(std::size_t top, std::size_t bottom) const {
  if (top >= n_top_ || bottom >= n_bottom_) return false;
  return (bits_[top * words_ + bottom / 64] >> (bottom % 64)) & 1U;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t MatchingEngine::solve(
    std::span<const std::uint64_t> adjacency, std::size_t n_top, std::size_t n_bottom,
    std::size_t words, std::span<const std::pair<std::size_t, std::size_t>> warm_start) {
  adj_ = adjacency;
  n_top_ = n_top;
  words_ = words;
  mate_top_.assign(n_top, kFree);
  mate_bottom_.assign(n_bottom, kFree);
  dist_.resize(n_top);
  queue_.resize(n_top);

  std::size_t size = 0;
  for (auto [u, v] : warm_start) {
    if (u >= n_top || v >= n_bottom) continue;
    if (mate_top_[u] != kFree || mate_bottom_[v] != kFree) continue;
    if (!((adj_[u * words_ + v / 64] >> (v % 64)) & 1U)) continue;
    mate_top_[u] = static_cast<int>(v);
    mate_bottom_[v] = static_cast<int>(u);
    ++size;
  }

  // Greedy pass; Hopcroft-Karp phases then only repair what it missed.
  for (std::size_t u = 0; u < n_top; ++u) {
    if (mate_top_[u] != kFree) continue;
    const std::uint64_t* row = adj_.data() + u * words_;
    for (std::size_t k = 0; k < words_ && mate_top_[u] == kFree; ++k) {
      for (std::uint64_t x = row[k]; x; x &= x - 1) {
        auto v = static_cast<int>(k * 64 + std::countr_zero(x));
        if (mate_bottom_[v] == kFree) {
          mate_top_[u] = v;
          mate_bottom_[v] = static_cast<int>(u);
          ++size;
          break;
        }
      }
    }
  }

  const std::size_t limit = std::min(n_top, n_bottom);
  while (size < limit && bfs()) {
    for (std::size_t u = 0; u < n_top; ++u) {
      if (mate_top_[u] == kFree && dfs(static_cast<int>(u))) ++size;
    }
  }
  return size;
}

bool MatchingEngine::bfs() {
  std::size_t head = 0;
  std::size_t tail = 0;
  for (std::size_t u = 0; u < n_top_; ++u) {
    if (mate_top_[u] == kFree) {
      dist_[u] = 0;
      queue_[tail++] = static_cast<int>(u);
    } else {
      dist_[u] = kUnreached;
    }
  }
  bool reached_free = false;
  while (head < tail) {
    const int u = queue_[head++];
    const std::uint64_t* row = adj_.data() + static_cast<std::size_t>(u) * words_;
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t x = row[k]; x; x &= x - 1) {
        const int w = mate_bottom_[k * 64 + std::countr_zero(x)];
        if (w == kFree) {
          reached_free = true;
        } else if (dist_[w] == kUnreached) {
          dist_[w] = dist_[u] + 1;
          queue_[tail++] = w;
        }
      }
    }
  }
  return reached_free;
}

bool MatchingEngine::dfs(int u) {
  const std::uint64_t* row = adj_.data() + static_cast<std::size_t>(u) * words_;
  for (std::size_t k = 0; k < words_; ++k) {
    for (std::uint64_t x = row[k]; x; x &= x - 1) {
      const auto v = static_cast<int>(k * 64 + std::countr_zero(x));
      const int w = mate_bottom_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        mate_top_[u] = v;
        mate_bottom_[v] = u;
        return true;
      }
    }
  }
  dist_[u] = kUnreached;
  return false;
}

Matching max_matching(const BipartiteGraph& g) {
  MatchingEngine engine;
  engine.solve(g);
  Matching out;
  auto mates = engine.mate_of_top();
  for (std::size_t u = 0; u < mates.size(); ++u) {
    if (mates[u] != MatchingEngine::kFree) {
      out.emplace_back(u, static_cast<std::size_t>(mates[u]));
    }
  }
  return out;
}

bool has_perfect_matching(const BipartiteGraph& g) {
  if (g.top_count() != g.bottom_count()) return false;
  MatchingEngine engine;
  return engine.solve(g) == g.top_count();
}

}  // namespace cantoria::graph
