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

#ifndef CANTORIA_SRC_ENUMERATE_INTERNAL_HPP_
#define CANTORIA_SRC_ENUMERATE_INTERNAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cantoria/enumerate.hpp"
#include "cantoria/graph.hpp"

namespace cantoria::enumerate::detail {

/// Reusable evaluator for last_column_count.
class LastColumnCounter {
 public:
  std::uint64_t count(std::span<const std::uint64_t> rows, std::size_t n);
  /// Appends every forced disequality; returns false on a (k, k) pair.
  bool conditions(std::span<const std::uint64_t> rows, std::size_t n,
                  std::vector<std::pair<std::size_t, std::size_t>>& out);

 private:
  // Rows i for which the prefix graph of row k minus row i is perfectly
  // matchable, as a bit mask; 0 if the maximum matching misses a column.
  std::uint64_t removable_rows(std::span<const std::uint64_t> rows, std::size_t n,
                               std::size_t k);

  graph::MatchingEngine engine_;
  std::vector<std::uint64_t> adjacency_;
  ParityUnionFind components_{0};
};

/// Cell order and row-completion schedule for the prefix search over the
/// (n-1) x (n-1) free block. The last row is fixed to ones.
class PrefixPlan {
 public:
  PrefixPlan(std::size_t n, bool skeleton);

  std::size_t n() const noexcept { return n_; }
  bool prunes() const noexcept { return skeleton_; }
  std::size_t task_count() const noexcept { return std::size_t{1} << task_cells_; }

  struct Cell {
    std::uint8_t row;
    std::uint8_t col;
  };
  std::vector<Cell> order;
  /// Rows whose last free cell sits at each position.
  std::vector<std::vector<std::uint8_t>> completes;

 private:
  friend class PrefixSearch;
  std::size_t n_;
  bool skeleton_;
  std::size_t task_cells_;
};

/// Depth-first search over prefixes; one instance per worker.
class PrefixSearch {
 public:
  PrefixSearch(const PrefixPlan& plan, const PrefixWeight& weight);

  /// Sum of weighted last-column counts over prefixes in task `task`, whose
  /// first cells in plan order spell the task index in binary.
  BigInt run(std::size_t task);

 private:
  void descend(std::size_t pos);
  bool completed_row_matchable();

  const PrefixPlan* plan_;
  const PrefixWeight* weight_;
  std::size_t task_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> known_;
  std::vector<std::uint8_t> complete_;
  std::vector<std::uint64_t> adjacency_;
  graph::MatchingEngine engine_;
  LastColumnCounter counter_;
  std::uint64_t small_total_ = 0;
  BigInt total_ = 0;
};

}  // namespace cantoria::enumerate::detail

#endif  // CANTORIA_SRC_ENUMERATE_INTERNAL_HPP_
