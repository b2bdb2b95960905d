#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bohrlab {

/// Universe ceiling for the bitmask search.
inline constexpr std::int64_t kExtremalMaxN = 128;

struct ExtremalRecord {
  std::int64_t n = 0;
  std::int64_t max_size = 0;
  std::vector<std::int64_t> witness;  // lexicographically smallest optimum
  std::uint64_t node_count = 0;
  bool exact = true;  // false: budget ran out, max_size is a lower bound
};

/// Rows for N = 1..n_max. `budget` caps the search nodes of each row; a row
/// that runs out keeps its best set and is flagged inexact.
std::vector<ExtremalRecord> extremal_table(std::int64_t n_max, std::uint64_t budget);

/// Largest subset of {1..n} free of nontrivial x+y+z = 3w. Solves the
/// smaller intervals first since their optima bound the search.
ExtremalRecord max_solution_free(std::int64_t n, std::uint64_t budget);

/// `N,max_size,witness,exact` with the witness space-separated.
std::string extremal_csv(const std::vector<ExtremalRecord>& rows);

}  // namespace bohrlab
