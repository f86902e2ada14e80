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

#include "enumerate_internal.hpp"

namespace cantoria::enumerate {

ParityUnionFind::ParityUnionFind(std::size_t n) { reset(n); }

void ParityUnionFind::reset(std::size_t n) {
  parent_.resize(n);
  for (std::size_t v = 0; v < n; ++v) parent_[v] = v;
  parity_.assign(n, 0);
  rank_.assign(n, 0);
  components_ = n;
}

std::pair<std::size_t, bool> ParityUnionFind::find(std::size_t v) {
  bool parity = false;
  std::size_t root = v;
  while (parent_[root] != root) {
    parity ^= parity_[root] != 0;
    root = parent_[root];
  }
  // Path compression, rewriting parities relative to the root.
  bool remaining = parity;
  while (parent_[v] != root && parent_[v] != v) {
    const std::size_t next = parent_[v];
    const bool own = parity_[v] != 0;
    parent_[v] = root;
    parity_[v] = remaining;
    remaining ^= own;
    v = next;
  }
  return {root, parity};
}

bool ParityUnionFind::unite(std::size_t a, std::size_t b, bool parity) {
  auto [ra, pa] = find(a);
  auto [rb, pb] = find(b);
  if (ra == rb) return (pa ^ pb) == parity;
  if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  parity_[rb] = pa ^ pb ^ parity;
  if (rank_[ra] == rank_[rb]) ++rank_[ra];
  --components_;
  return true;
}

namespace detail {

namespace {

void validate_prefix(std::span<const std::uint64_t> rows, std::size_t n) {
  if (n == 0 || n > 64) throw Error("prefix size must be in 1..64");
  if (rows.size() != n) throw Error("prefix must have n rows");
  const std::uint64_t cols = n - 1 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n - 1)) - 1;
  if ((rows[n - 1] & cols) != cols) throw Error("last prefix row must be all ones");
}

}  // namespace

std::uint64_t LastColumnCounter::removable_rows(std::span<const std::uint64_t> rows,
                                                std::size_t n, std::size_t k) {
  const std::size_t m = n - 1;
  const std::uint64_t cols = (std::uint64_t{1} << m) - 1;
  adjacency_.resize(n);
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < n; ++i) {
    adjacency_[i] = ~(rows[i] ^ rows[k]) & cols;
    covered |= adjacency_[i];
  }
  if (covered != cols) return 0;
  if (engine_.solve(adjacency_, n, m, 1) < m) return 0;

  // Exactly one row is unmatched; rows reachable from it by alternating
  // paths are those some maximum matching leaves out.
  const auto mate_top = engine_.mate_of_top();
  const auto mate_bottom = engine_.mate_of_bottom();
  std::size_t free_row = 0;
  while (mate_top[free_row] != graph::MatchingEngine::kFree) ++free_row;
  std::uint64_t reached = std::uint64_t{1} << free_row;
  std::uint64_t frontier = reached;
  while (frontier != 0) {
    const auto u = static_cast<std::size_t>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    for (std::uint64_t c = adjacency_[u]; c != 0; c &= c - 1) {
      const auto w = static_cast<std::size_t>(mate_bottom[std::countr_zero(c)]);
      const std::uint64_t bit = std::uint64_t{1} << w;
      if ((reached & bit) == 0) {
        reached |= bit;
        frontier |= bit;
      }
    }
  }
  return reached;
}

std::uint64_t LastColumnCounter::count(std::span<const std::uint64_t> rows, std::size_t n) {
  if (n == 1) return 0;  // a 1 x 1 tableau is its own diagonal
  components_.reset(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t removable = removable_rows(rows, n, k);
    if ((removable >> k) & 1U) return 0;
    for (std::uint64_t r = removable; r != 0; r &= r - 1) {
      if (!components_.unite(static_cast<std::size_t>(std::countr_zero(r)), k, true)) return 0;
    }
  }
  // The component of the last row is pinned by x_{n-1} = 1.
  return std::uint64_t{1} << (components_.components() - 1);
}

bool LastColumnCounter::conditions(std::span<const std::uint64_t> rows, std::size_t n,
                                   std::vector<std::pair<std::size_t, std::size_t>>& out) {
  bool consistent_rows = true;
  if (n == 1) {
    out.emplace_back(0, 0);
    return false;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t removable = removable_rows(rows, n, k);
    for (std::uint64_t r = removable; r != 0; r &= r - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(r));
      out.emplace_back(i, k);
      if (i == k) consistent_rows = false;
    }
  }
  return consistent_rows;
}

PrefixPlan::PrefixPlan(std::size_t n, bool skeleton) : n_(n), skeleton_(skeleton) {
  if (n < 1 || n > 8) throw Error("last-column counting supports 1 <= n <= 8");
  const std::size_t m = n - 1;
  auto on_skeleton = [](std::size_t i, std::size_t j) { return (j + 3 - i % 3) % 3 == 0; };
  if (skeleton) {
    // Skeleton cells column by column, then the rest row by row so that
    // rows complete top to bottom.
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (on_skeleton(i, j)) order.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!on_skeleton(i, j)) order.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
      }
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        order.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
      }
    }
  }
  completes.assign(order.size(), {});
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t last = 0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if (order[pos].row == i) last = pos;
    }
    completes[last].push_back(static_cast<std::uint8_t>(i));
  }
  task_cells_ = std::min<std::size_t>(order.size(), 8);
}

PrefixSearch::PrefixSearch(const PrefixPlan& plan, const PrefixWeight& weight)
    : plan_(&plan), weight_(&weight) {}

BigInt PrefixSearch::run(std::size_t task) {
  const std::size_t n = plan_->n_;
  const std::size_t m = n - 1;
  task_ = task;
  rows_.assign(n, 0);
  known_.assign(n, 0);
  complete_.assign(n, 0);
  rows_[m] = (std::uint64_t{1} << m) - 1;
  known_[m] = rows_[m];
  complete_[m] = 1;
  small_total_ = 0;
  total_ = 0;
  if (!plan_->prunes() || !completed_row_matchable()) descend(0);
  total_ += small_total_;
  return total_;
}

bool PrefixSearch::completed_row_matchable() {
  const std::size_t n = plan_->n_;
  const std::size_t m = n - 1;
  if (m == 0) return false;
  const std::uint64_t cols = (std::uint64_t{1} << m) - 1;
  adjacency_.resize(m);
  for (std::size_t k = 0; k < n; ++k) {
    if (!complete_[k]) continue;
    // Graph of row k on the known cells only, row k itself removed: a
    // perfect matching here survives every completion, and row k then
    // matches itself in the last column.
    std::size_t top = 0;
    std::uint64_t covered = 0;
    bool isolated = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const std::uint64_t a = known_[i] & ~(rows_[i] ^ rows_[k]) & cols;
      adjacency_[top++] = a;
      covered |= a;
      isolated |= a == 0;
    }
    if (isolated || covered != cols) continue;
    if (engine_.solve(adjacency_, m, m, 1) == m) return true;
  }
  return false;
}

void PrefixSearch::descend(std::size_t pos) {
  const auto& plan = *plan_;
  if (pos == plan.order.size()) {
    const std::size_t n = plan.n_;
    std::uint64_t weight = 1;
    if (*weight_) {
      const std::size_t m = n - 1;
      std::uint64_t prefix[64];
      for (std::size_t i = 0; i < n; ++i) prefix[i] = rows_[i] & ((std::uint64_t{1} << m) - 1);
      weight = (*weight_)(std::span<const std::uint64_t>(prefix, n), n);
      if (weight == 0) return;
    }
    const std::uint64_t c = counter_.count(rows_, n);
    if (c == 0) return;
    if (weight == 1) {
      small_total_ += c;
      if (small_total_ >= (std::uint64_t{1} << 62)) {
        total_ += small_total_;
        small_total_ = 0;
      }
    } else {
      total_ += BigInt(c) * weight;
    }
    return;
  }
  const auto [row, col] = plan.order[pos];
  const std::uint64_t bit = std::uint64_t{1} << col;
  const bool forced = pos < plan.task_cells_;
  const bool row_done = !plan.completes[pos].empty();
  known_[row] |= bit;
  for (std::uint64_t v = 0; v < 2; ++v) {
    if (forced && ((task_ >> pos) & 1U) != v) continue;
    if (v) {
      rows_[row] |= bit;
    } else {
      rows_[row] &= ~bit;
    }
    if (row_done && plan.prunes()) {
      for (auto r : plan.completes[pos]) complete_[r] = 1;
      const bool dead = completed_row_matchable();
      for (auto r : plan.completes[pos]) complete_[r] = 0;
      if (dead) continue;
    }
    for (auto r : plan.completes[pos]) complete_[r] = 1;
    descend(pos + 1);
    for (auto r : plan.completes[pos]) complete_[r] = 0;
  }
  rows_[row] &= ~bit;
  known_[row] &= ~bit;
}

}  // namespace detail

std::vector<std::pair<std::size_t, std::size_t>> last_column_conditions(
    std::span<const std::uint64_t> prefix_rows, std::size_t n) {
  detail::validate_prefix(prefix_rows, n);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  detail::LastColumnCounter counter;
  counter.conditions(prefix_rows, n, out);
  return out;
}

std::uint64_t last_column_count(std::span<const std::uint64_t> prefix_rows, std::size_t n) {
  detail::validate_prefix(prefix_rows, n);
  thread_local detail::LastColumnCounter counter;
  std::vector<std::uint64_t> rows(prefix_rows.begin(), prefix_rows.end());
  const std::uint64_t cols = (std::uint64_t{1} << (n - 1)) - 1;
  for (auto& r : rows) r &= cols;
  return counter.count(rows, n);
}

}  // namespace cantoria::enumerate
