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

#ifndef CANTORIA_GRAPH_HPP_
#define CANTORIA_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cantoria::graph {

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + 63) / 64;
}

/// Bipartite graph with "top" and "bottom" vertex classes; each top vertex
/// owns a bitset row over the bottom vertices.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t n_top, std::size_t n_bottom);

  std::size_t top_count() const noexcept { return n_top_; }
  std::size_t bottom_count() const noexcept { return n_bottom_; }
  std::size_t words_per_row() const noexcept { return words_; }

  void add_edge(std::size_t top, std::size_t bottom);
  bool has_edge(std::size_t top, std::size_t bottom) const;
  std::size_t edge_count() const;

  std::span<const std::uint64_t> neighbors(std::size_t top) const {
    return std::span<const std::uint64_t>(bits_).subspan(top * words_, words_);
  }
  /// All rows, row-major, `words_per_row()` words each.
  std::span<const std::uint64_t> adjacency() const noexcept { return bits_; }

 private:
  std::size_t n_top_;
  std::size_t n_bottom_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

/// Hopcroft-Karp over word-packed adjacency rows, O(E sqrt(V)). Keeps its
/// scratch buffers between calls so hot loops do not allocate.
class MatchingEngine {
 public:
  static constexpr int kFree = -1;

  /// `adjacency` holds n_top rows of `words` uint64 words each. The optional
  /// warm start pairs are used as the initial matching when they are edges
  /// and mutually disjoint. Returns the size of a maximum matching.
  std::size_t solve(std::span<const std::uint64_t> adjacency, std::size_t n_top,
                    std::size_t n_bottom, std::size_t words,
                    std::span<const std::pair<std::size_t, std::size_t>> warm_start = {});

  std::size_t solve(const BipartiteGraph& g) {
    return solve(g.adjacency(), g.top_count(), g.bottom_count(), g.words_per_row());
  }

  /// Bottom vertex matched to each top vertex, or kFree.
  std::span<const int> mate_of_top() const noexcept { return mate_top_; }
  /// Top vertex matched to each bottom vertex, or kFree.
  std::span<const int> mate_of_bottom() const noexcept { return mate_bottom_; }

 private:
  bool bfs();
  bool dfs(int u);

  std::span<const std::uint64_t> adj_;
  std::size_t n_top_ = 0;
  std::size_t words_ = 0;
  std::vector<int> mate_top_;
  std::vector<int> mate_bottom_;
  std::vector<int> dist_;
  std::vector<int> queue_;
};

Matching max_matching(const BipartiteGraph& g);

/// True iff n_top == n_bottom and a matching saturating both sides exists.
bool has_perfect_matching(const BipartiteGraph& g);

/// Directed graph with a bitset of out-neighbours per vertex. Self-loops are
/// stored but never used by cycles through two or more vertices.
class Digraph {
 public:
  explicit Digraph(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  void add_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const {
    return (bits_[from * words_ + to / 64] >> (to % 64)) & 1U;
  }
  std::span<const std::uint64_t> out_neighbors(std::size_t v) const {
    return std::span<const std::uint64_t>(bits_).subspan(v * words_, words_);
  }
  std::span<const std::uint64_t> adjacency() const noexcept { return bits_; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Top vertex u joined to bottom vertex v iff u -> v, self-loops dropped.
/// A Hamiltonian cycle on two or more vertices is a perfect matching here.
BipartiteGraph bipartite_double_cover(const Digraph& d);

enum class HamiltonStatus { found, absent, undecided };

struct HamiltonOptions {
  /// Backtracking nodes allowed before giving up (or switching to the
  /// subset dynamic programme when n <= exact_dp_limit).
  std::uint64_t node_budget = 2'000'000;
  int patch_restarts = 8;
  std::size_t exact_dp_limit = 24;
};

struct HamiltonResult {
  HamiltonStatus status = HamiltonStatus::undecided;
  /// Vertices in cycle order when found; cycle[k] -> cycle[k + 1 mod n].
  std::vector<std::size_t> cycle;
  std::uint64_t nodes = 0;
  /// Which stage settled the instance: "trivial", "degree", "matching",
  /// "patching", "backtracking", "subset-dp" or "budget".
  std::string method;
};

/// Heuristic first (cycle cover from a perfect matching of the double
/// cover, then pairwise cycle patching), then bounded backtracking, then the
/// exact subset DP for small n. Only `undecided` when n > exact_dp_limit and
/// the node budget ran out.
HamiltonResult find_hamiltonian_cycle(const Digraph& d, const HamiltonOptions& options = {});

/// Exact decision. n = 1 is Hamiltonian iff the vertex has a self-loop.
bool digraph_hamiltonian(const Digraph& d);

/// Exact subset DP (Held-Karp style) over subsets avoiding vertex 0.
/// Needs 2^(n-1) words of memory; n <= 26.
bool hamiltonian_by_subset_dp(const Digraph& d);

}  // namespace cantoria::graph

#endif  // CANTORIA_GRAPH_HPP_
