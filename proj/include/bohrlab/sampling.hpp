#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"
#include "bohrlab/zn.hpp"

namespace bohrlab {

/// Uniform k-subset of {0..n-1} (Floyd's algorithm), ascending.
inline std::vector<std::int64_t> random_indices(std::int64_t n, std::int64_t k, Rng& rng) {
  if (k < 0 || k > n) throw Error("InvalidArgument", "subset size out of range");
  std::unordered_set<std::int64_t> picked;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::int64_t j = n - k; j < n; ++j) {
    const std::int64_t t = rng.uniform_int(0, j);
    const std::int64_t v = picked.count(t) ? j : t;
    picked.insert(v);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline ZnSet random_subset(const Modulus& m, std::int64_t k, Rng& rng) {
  const auto idx = random_indices(m.n(), k, rng);
  return ZnSet(m, idx);
}

/// Uniform k-subset of an existing set.
inline ZnSet random_subset_of(const ZnSet& s, std::int64_t k, Rng& rng) {
  const auto elems = s.elements();
  const auto idx = random_indices(static_cast<std::int64_t>(elems.size()), k, rng);
  std::vector<std::int64_t> chosen;
  chosen.reserve(idx.size());
  for (const auto i : idx) chosen.push_back(elems[static_cast<std::size_t>(i)]);
  return ZnSet(s.modulus(), chosen);
}

}  // namespace bohrlab
