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
#include <numeric>

#include "cantoria/core.hpp"
#include "cantoria/graph.hpp"
#include "cantoria/random.hpp"

namespace cantoria::graph {

Digraph::Digraph(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

void Digraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= n_ || to >= n_) throw Error("edge endpoint out of range");
  bits_[from * words_ + to / 64] |= std::uint64_t{1} << (to % 64);
}

BipartiteGraph bipartite_double_cover(const Digraph& d) {
  BipartiteGraph g(d.size(), d.size());
  for (std::size_t u = 0; u < d.size(); ++u) {
    auto row = d.out_neighbors(u);
    for (std::size_t k = 0; k < row.size(); ++k) {
      for (std::uint64_t x = row[k]; x; x &= x - 1) {
        auto v = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        if (v != u) g.add_edge(u, v);
      }
    }
  }
  return g;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Cycle labels of a successor permutation; returns the number of cycles.
std::size_t label_cycles(const std::vector<std::size_t>& succ,
                         std::vector<std::size_t>& label) {
  label.assign(succ.size(), kNone);
  std::size_t cycles = 0;
  for (std::size_t v = 0; v < succ.size(); ++v) {
    if (label[v] != kNone) continue;
    for (std::size_t u = v; label[u] == kNone; u = succ[u]) label[u] = cycles;
    ++cycles;
  }
  return cycles;
}

std::vector<std::size_t> cycle_from_successors(const std::vector<std::size_t>& succ) {
  std::vector<std::size_t> cycle;
  cycle.reserve(succ.size());
  std::size_t v = 0;
  do {
    cycle.push_back(v);
    v = succ[v];
  } while (v != 0);
  return cycle;
}

// Merges cycles of a cycle cover two at a time: u -> su in one cycle and
// v -> sv in another become u -> sv and v -> su when both arcs exist.
bool patch_cycle_cover(const Digraph& d, std::vector<std::size_t>& succ) {
  const std::size_t n = d.size();
  std::vector<std::size_t> label;
  std::size_t cycles = label_cycles(succ, label);
  while (cycles > 1) {
    bool merged = false;
    for (std::size_t u = 0; u < n && !merged; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (label[u] == label[v]) continue;
        if (d.has_edge(u, succ[v]) && d.has_edge(v, succ[u])) {
          std::swap(succ[u], succ[v]);
          merged = true;
          break;
        }
      }
    }
    if (!merged) return false;
    cycles = label_cycles(succ, label);
  }
  return true;
}

// Cycle cover from a perfect matching of the double cover of `d` relabelled
// by `perm` (perm[new] = old). Empty if there is none.
std::vector<std::size_t> relabelled_cycle_cover(const Digraph& d,
                                                const std::vector<std::size_t>& perm,
                                                MatchingEngine& engine) {
  const std::size_t n = d.size();
  BipartiteGraph g(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && d.has_edge(perm[a], perm[b])) g.add_edge(a, b);
    }
  }
  if (engine.solve(g) != n) return {};
  std::vector<std::size_t> succ(n);
  auto mates = engine.mate_of_top();
  for (std::size_t a = 0; a < n; ++a) {
    succ[perm[a]] = perm[static_cast<std::size_t>(mates[a])];
  }
  return succ;
}

class Backtracker {
 public:
  Backtracker(const Digraph& d, std::uint64_t budget)
      : d_(d), n_(d.size()), words_(d.words_per_row()), budget_(budget),
        in_(n_ * words_, 0), unvisited_(words_, 0) {
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = 0; v < n_; ++v) {
        if (u != v && d.has_edge(u, v)) in_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
      }
    }
    for (std::size_t v = 1; v < n_; ++v) set(unvisited_, v, true);
  }

  // Searches for a cycle through all vertices starting at 0.
  HamiltonStatus run() {
    path_.assign(1, 0);
    if (extend(0)) return HamiltonStatus::found;
    return aborted_ ? HamiltonStatus::undecided : HamiltonStatus::absent;
  }

  const std::vector<std::size_t>& path() const { return path_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static void set(std::vector<std::uint64_t>& bits, std::size_t v, bool on) {
    auto mask = std::uint64_t{1} << (v % 64);
    if (on) {
      bits[v / 64] |= mask;
    } else {
      bits[v / 64] &= ~mask;
    }
  }

  bool intersects(std::span<const std::uint64_t> row) const {
    for (std::size_t k = 0; k < words_; ++k) {
      if (row[k] & unvisited_[k]) return true;
    }
    return false;
  }

  std::size_t unvisited_out_degree(std::size_t v) const {
    std::size_t total = 0;
    auto row = d_.out_neighbors(v);
    for (std::size_t k = 0; k < words_; ++k) {
      total += static_cast<std::size_t>(std::popcount(row[k] & unvisited_[k]));
    }
    return total;
  }

  // Every unvisited vertex still needs a way in (from an unvisited vertex or
  // the current end) and a way out (to an unvisited vertex or back to 0).
  bool feasible(std::size_t end) const {
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t x = unvisited_[k]; x; x &= x - 1) {
        auto u = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        std::span<const std::uint64_t> in_row(in_.data() + u * words_, words_);
        if (!intersects(in_row) && !d_.has_edge(end, u)) return false;
        auto out_row = d_.out_neighbors(u);
        bool can_leave = d_.has_edge(u, 0);
        for (std::size_t w = 0; w < words_ && !can_leave; ++w) {
          std::uint64_t targets = out_row[w] & unvisited_[w];
          if (w == u / 64) targets &= ~(std::uint64_t{1} << (u % 64));
          can_leave = targets != 0;
        }
        if (!can_leave) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t end) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    if (path_.size() == n_) return d_.has_edge(end, 0);
    if (!feasible(end)) return false;

    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    auto row = d_.out_neighbors(end);
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t x = row[k] & unvisited_[k]; x; x &= x - 1) {
        auto v = k * 64 + static_cast<std::size_t>(std::countr_zero(x));
        candidates.emplace_back(unvisited_out_degree(v), v);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [degree, v] : candidates) {
      set(unvisited_, v, false);
      path_.push_back(v);
      if (extend(v)) return true;
      path_.pop_back();
      set(unvisited_, v, true);
      if (aborted_) return false;
    }
    return false;
  }

  const Digraph& d_;
  std::size_t n_;
  std::size_t words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::uint64_t> in_;
  std::vector<std::uint64_t> unvisited_;
  std::vector<std::size_t> path_;
};

}  // namespace

namespace {

// Vertex v >= 1 is bit v - 1. dp[mask] = set of ends e such that some path
// starts at 0, visits exactly mask and stops at e. Returns the cycle, or an
// empty vector when there is none.
std::vector<std::size_t> subset_dp_cycle(const Digraph& d) {
  const std::size_t n = d.size();
  const std::size_t m = n - 1;
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 1; v < n; ++v) {
      if (u != v && d.has_edge(u, v)) out[u] |= std::uint32_t{1} << (v - 1);
    }
  }
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<std::uint32_t> dp(std::size_t{1} << m, 0);
  for (std::uint32_t x = out[0]; x; x &= x - 1) dp[x & (~x + 1)] |= x & (~x + 1);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const std::uint32_t ends = dp[mask];
    if (!ends) continue;
    std::uint32_t reach = 0;
    for (std::uint32_t e = ends; e; e &= e - 1) reach |= out[std::countr_zero(e) + 1];
    for (std::uint32_t x = reach & ~mask; x; x &= x - 1) {
      const std::uint32_t bit = x & (~x + 1);
      dp[mask | bit] |= bit;
    }
  }

  std::size_t last = kNone;
  for (std::uint32_t e = dp[full]; e; e &= e - 1) {
    auto v = static_cast<std::size_t>(std::countr_zero(e)) + 1;
    if (d.has_edge(v, 0)) {
      last = v;
      break;
    }
  }
  if (last == kNone) return {};

  std::vector<std::size_t> reversed{last};
  std::uint32_t mask = full;
  std::size_t current = last;
  while (true) {
    mask &= ~(std::uint32_t{1} << (current - 1));
    if (mask == 0) break;
    std::size_t prev = kNone;
    for (std::uint32_t e = dp[mask]; e; e &= e - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(e)) + 1;
      if (out[v] & (std::uint32_t{1} << (current - 1))) {
        prev = v;
        break;
      }
    }
    reversed.push_back(prev);
    current = prev;
  }
  reversed.push_back(0);
  return {reversed.rbegin(), reversed.rend()};
}

}  // namespace

bool hamiltonian_by_subset_dp(const Digraph& d) {
  const std::size_t n = d.size();
  if (n == 0) return false;
  if (n == 1) return d.has_edge(0, 0);
  if (n > 26) throw Error("subset DP limited to 26 vertices");
  return !subset_dp_cycle(d).empty();
}

HamiltonResult find_hamiltonian_cycle(const Digraph& d, const HamiltonOptions& options) {
  const std::size_t n = d.size();
  HamiltonResult result;
  if (n == 0) {
    result.status = HamiltonStatus::absent;
    result.method = "trivial";
    return result;
  }
  if (n == 1) {
    result.method = "trivial";
    if (d.has_edge(0, 0)) {
      result.status = HamiltonStatus::found;
      result.cycle = {0};
    } else {
      result.status = HamiltonStatus::absent;
    }
    return result;
  }

  auto cover = bipartite_double_cover(d);
  for (std::size_t u = 0; u < n; ++u) {
    bool has_out = false;
    for (auto w : cover.neighbors(u)) has_out |= w != 0;
    if (!has_out) {
      result.status = HamiltonStatus::absent;
      result.method = "degree";
      return result;
    }
  }

  MatchingEngine engine;
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  auto succ = relabelled_cycle_cover(d, identity, engine);
  if (succ.empty()) {
    result.status = HamiltonStatus::absent;
    result.method = "matching";
    return result;
  }
  if (patch_cycle_cover(d, succ)) {
    result.status = HamiltonStatus::found;
    result.method = "patching";
    result.cycle = cycle_from_successors(succ);
    return result;
  }
  CounterRng rng(n, 0x48414d);
  for (int restart = 0; restart < options.patch_restarts; ++restart) {
    auto perm = identity;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    succ = relabelled_cycle_cover(d, perm, engine);
    if (patch_cycle_cover(d, succ)) {
      result.status = HamiltonStatus::found;
      result.method = "patching";
      result.cycle = cycle_from_successors(succ);
      return result;
    }
  }

  Backtracker search(d, options.node_budget);
  auto status = search.run();
  result.nodes = search.nodes();
  if (status == HamiltonStatus::found) {
    result.status = status;
    result.method = "backtracking";
    result.cycle = search.path();
    return result;
  }
  if (status == HamiltonStatus::absent) {
    result.status = status;
    result.method = "backtracking";
    return result;
  }
  if (n <= std::min<std::size_t>(options.exact_dp_limit, 26)) {
    result.method = "subset-dp";
    result.cycle = subset_dp_cycle(d);
    result.status = result.cycle.empty() ? HamiltonStatus::absent : HamiltonStatus::found;
    return result;
  }
  result.status = HamiltonStatus::undecided;
  result.method = "budget";
  return result;
}

bool digraph_hamiltonian(const Digraph& d) {
  HamiltonOptions options;
  options.node_budget = std::numeric_limits<std::uint64_t>::max();
  return find_hamiltonian_cycle(d, options).status == HamiltonStatus::found;
}

}  // namespace cantoria::graph
