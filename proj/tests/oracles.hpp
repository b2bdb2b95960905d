#pragma once

// Slow reference implementations. Nothing here calls into the library's fast
// paths, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline long double unit_gap(i64 t, i64 x, i64 n) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((t * x) % n) /
                            static_cast<long double>(n);
  return std::abs(std::complex<long double>(1.0L, 0.0L) - std::polar(1.0L, angle));
}

inline std::vector<i64> bohr(i64 n, const std::vector<i64>& gamma, double rho) {
  std::vector<i64> out;
  for (i64 x = 0; x < n; ++x) {
    bool in = true;
    for (const auto t : gamma) {
      if (unit_gap(((t % n) + n) % n, x, n) > static_cast<long double>(rho) + 1e-12L) {
        in = false;
        break;
      }
    }
    if (in) out.push_back(x);
  }
  return out;
}

// Regularity of B(Γ, r0): every breakpoint in the window and its left limit,
// plus a dense grid.
inline bool regular(i64 n, const std::vector<i64>& gamma, double r0) {
  const auto d = static_cast<double>(gamma.size());
  std::vector<long double> vals;
  for (i64 x = 0; x < n; ++x) {
    long double v = 0;
    for (const auto t : gamma) v = std::max(v, unit_gap(t, x, n));
    vals.push_back(v);
  }
  auto count = [&](long double r) {
    return static_cast<double>(std::count_if(vals.begin(), vals.end(), [r](long double v) { return v <= r + 1e-12L; }));
  };
  const double base = count(r0);
  const double w = 1.0 / (100.0 * d);
  auto ok = [&](double dp, double c) {
    const double band = 100.0 * d * std::fabs(dp);
    return c / base >= 1.0 - band - 1e-12 && c / base <= 1.0 + band + 1e-12;
  };
  for (int j = 0; j <= 4000; ++j) {
    const double dp = -w + 2.0 * w * j / 4000.0;
    if (!ok(dp, count(r0 * (1.0 + dp)))) return false;
  }
  for (const auto v : vals) {
    const double r = static_cast<double>(v - 1e-12L);
    const double dp = r / r0 - 1.0;
    if (std::fabs(dp) > w) continue;
    const double at = count(r - 1e-13);  // below the jump
    const double after = count(r);
    if (dp > 0 && !ok(dp, after)) return false;
    if (dp < 0 && !ok(dp, at)) return false;
  }
  return true;
}

inline std::vector<i64> cyclic_convolve(const std::vector<i64>& f, const std::vector<i64>& g) {
  const auto n = static_cast<i64>(f.size());
  std::vector<i64> out(f.size(), 0);
  for (i64 x = 0; x < n; ++x) {
    i64 s = 0;
    for (i64 y = 0; y < n; ++y) s += f[static_cast<std::size_t>(y)] * g[static_cast<std::size_t>(((x - y) % n + n) % n)];
    out[static_cast<std::size_t>(x)] = s;
  }
  return out;
}

inline std::vector<i64> indicator(i64 n, const std::vector<i64>& elems) {
  std::vector<i64> v(static_cast<std::size_t>(n), 0);
  for (const auto e : elems) v[static_cast<std::size_t>(e)] = 1;
  return v;
}

struct Count {
  i64 total = 0, trivial = 0, nontrivial = 0;
};

// Quadruples (x, y, z, w) in A^4 with x + y + z = 3w mod n.
inline Count count_cyclic(i64 n, const std::vector<i64>& a) {
  Count c;
  for (const auto x : a)
    for (const auto y : a)
      for (const auto z : a)
        for (const auto w : a)
          if (((x + y + z - 3 * w) % n + n) % n == 0) {
            ++c.total;
            if (x == y && y == z && z == w) ++c.trivial;
          }
  c.nontrivial = c.total - c.trivial;
  return c;
}

// Same over Z, with w located by membership instead of a fourth loop so that
// |A| ~ 100 stays cheap.
inline Count count_integer(const std::vector<i64>& a) {
  Count c;
  if (a.empty()) return c;
  const i64 top = *std::max_element(a.begin(), a.end());
  std::vector<char> in(static_cast<std::size_t>(top) + 1, 0);
  for (const auto e : a) in[static_cast<std::size_t>(e)] = 1;
  for (const auto x : a)
    for (const auto y : a)
      for (const auto z : a) {
        const i64 s = x + y + z;
        if (s % 3 != 0 || s / 3 > top || s / 3 < 0 || !in[static_cast<std::size_t>(s / 3)]) continue;
        ++c.total;
        if (x == y && y == z) ++c.trivial;
      }
  c.nontrivial = c.total - c.trivial;
  return c;
}

// Quadruple count mod n with w found through a lookup table of 3w residues.
inline Count count_cyclic_fast(i64 n, const std::vector<i64>& a) {
  std::vector<i64> triple_hits(static_cast<std::size_t>(n), 0);
  for (const auto w : a) ++triple_hits[static_cast<std::size_t>((3 * w) % n)];
  Count c;
  for (const auto x : a)
    for (const auto y : a)
      for (const auto z : a) c.total += triple_hits[static_cast<std::size_t>((x + y + z) % n)];
  c.trivial = static_cast<i64>(a.size());  // x = y = z = w always solves
  c.nontrivial = c.total - c.trivial;
  return c;
}

inline bool solution_free(const std::vector<i64>& a) { return count_integer(a).nontrivial == 0; }

struct Extremal {
  i64 size = 0;
  std::vector<i64> witness;
};

// Every subset of {1..n}; the witness is the lexicographically smallest
// optimum with elements compared in ascending order.
inline Extremal extremal_exhaustive(i64 n) {
  Extremal best;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < best.size) continue;
    std::vector<i64> s;
    for (i64 v = 1; v <= n; ++v)
      if (mask & (1u << (v - 1))) s.push_back(v);
    if (!solution_free(s)) continue;
    if (size > best.size || s < best.witness) {
      best.size = size;
      best.witness = s;
    }
  }
  return best;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace oracle
