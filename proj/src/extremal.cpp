#include "bohrlab/extremal.hpp"

#include <algorithm>

#include "bohrlab/conv.hpp"
#include "bohrlab/csv.hpp"
#include "bohrlab/error.hpp"

namespace bohrlab {

namespace {

using Mask = unsigned __int128;

Mask bit(std::int64_t v) { return Mask{1} << (v - 1); }

// For each v, the sets S \ {v} over nontrivial solutions S whose largest value
// is v. Including v conflicts iff one of them is already chosen. Supersets of
// another entry are dropped.
std::vector<std::vector<Mask>> conflicts(std::int64_t n) {
  std::vector<std::vector<Mask>> out(static_cast<std::size_t>(n) + 1);
  for (std::int64_t v = 1; v <= n; ++v) {
    std::vector<Mask> masks;
    for (std::int64_t y = 1; y <= v; ++y) {
      for (std::int64_t z = y; z <= v; ++z) {
        const std::int64_t s = v + y + z;
        if (s % 3 != 0) continue;
        const std::int64_t w = s / 3;
        if (y == v && z == v) continue;
        Mask m = 0;
        for (const auto e : {y, z, w}) {
          if (e != v) m |= bit(e);
        }
        masks.push_back(m);
      }
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Mask> minimal;
    for (const auto m : masks) {
      const bool covered = std::any_of(masks.begin(), masks.end(), [m](Mask o) { return o != m && (o & m) == o; });
      if (!covered) minimal.push_back(m);
    }
    out[static_cast<std::size_t>(v)] = std::move(minimal);
  }
  return out;
}

struct Search {
  std::int64_t n;
  const std::vector<std::vector<Mask>>& conf;
  const std::vector<std::int64_t>& ub;  // ub[k] bounds any solution-free set in an interval of length k
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::int64_t best;
  Mask best_set = 0;

  void go(std::int64_t v, Mask chosen, std::int64_t size) {
    if (out_of_budget) return;
    if (++nodes > budget) {
      out_of_budget = true;
      return;
    }
    if (size > best) {
      best = size;
      best_set = chosen;
    }
    if (v > n) return;
    if (size + ub[static_cast<std::size_t>(n - v + 1)] <= best) return;
    const auto& list = conf[static_cast<std::size_t>(v)];
    const bool ok = std::none_of(list.begin(), list.end(), [chosen](Mask m) { return (chosen & m) == m; });
    if (ok) go(v + 1, chosen | bit(v), size + 1);
    go(v + 1, chosen, size);
  }
};

std::vector<std::int64_t> unpack(Mask m, std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 1; v <= n; ++v) {
    if (m & bit(v)) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<ExtremalRecord> extremal_table(std::int64_t n_max, std::uint64_t budget) {
  if (n_max < 1) throw Error("InvalidArgument", "N must be >= 1");
  if (n_max > kExtremalMaxN) throw Error("CapacityExceeded", "N above " + std::to_string(kExtremalMaxN));
  const auto conf = conflicts(n_max);
  std::vector<std::int64_t> ub{0};
  std::vector<ExtremalRecord> rows;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const std::int64_t prev = n == 1 ? 0 : rows.back().max_size;
    // f(n) is f(n-1) or f(n-1)+1; starting at f(n-1)-1 lets the first optimum
    // reached in include-first order, which is the lexicographically smallest, win.
    Search s{n, conf, ub, budget, 0, false, std::max<std::int64_t>(prev - 1, 0), 0};
    ub.push_back(ub.back() + 1);
    s.go(1, 0, 0);
    ExtremalRecord rec;
    rec.n = n;
    rec.node_count = s.nodes;
    rec.exact = !s.out_of_budget;
    if (s.best >= prev && s.best_set != 0) {
      rec.max_size = s.best;
      rec.witness = unpack(s.best_set, n);
    } else {
      // Fall back on the previous optimum; {1} when there is none.
      rec = ExtremalRecord{n, std::max<std::int64_t>(prev, 1), rows.empty() ? std::vector<std::int64_t>{1} : rows.back().witness,
                           s.nodes, false};
    }
    if (count_solutions_interval(rec.witness).nontrivial != 0) {
      throw Error("InternalError", "extremal witness has a nontrivial solution");
    }
    if (rec.exact) ub.back() = rec.max_size;
    rows.push_back(std::move(rec));
  }
  return rows;
}

ExtremalRecord max_solution_free(std::int64_t n, std::uint64_t budget) {
  return extremal_table(n, budget).back();
}

std::string extremal_csv(const std::vector<ExtremalRecord>& rows) {
  std::string out = csv::row({"N", "max_size", "witness", "exact"});
  for (const auto& r : rows) {
    std::string w;
    for (const auto e : r.witness) {
      if (!w.empty()) w += ' ';
      w += csv::num(static_cast<long long>(e));
    }
    out += csv::row({csv::num(static_cast<long long>(r.n)), csv::num(static_cast<long long>(r.max_size)), csv::field(w),
                     r.exact ? "true" : "false"});
  }
  return out;
}

}  // namespace bohrlab
