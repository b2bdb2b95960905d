#include "bohrlab/conv.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bohrlab/error.hpp"
#include "bohrlab/fft.hpp"

namespace bohrlab {

namespace {

void require_same(const Modulus& a, const Modulus& b) {
  if (!(a == b)) {
    throw Error("ModulusMismatch", "Z_" + std::to_string(a.n()) + " vs Z_" + std::to_string(b.n()));
  }
}

double round_checked(double v) {
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 0.25) {
    throw Error("IntegerExactness", "transform output " + std::to_string(v) + " is not near an integer");
  }
  return r;
}

std::vector<double> as_doubles(const ZnSet& s) {
  std::vector<double> v(static_cast<std::size_t>(s.n()), 0.0);
  s.for_each([&](Residue x) { v[static_cast<std::size_t>(x)] = 1.0; });
  return v;
}

}  // namespace

DensityFn::DensityFn(Modulus m, std::vector<double> values, bool integral)
    : mod_(m), values_(std::move(values)), integral_(integral) {
  if (static_cast<std::int64_t>(values_.size()) != mod_.n()) {
    throw Error("ModulusMismatch", "value vector length " + std::to_string(values_.size()) +
                                       " does not match modulus " + std::to_string(mod_.n()));
  }
}

DensityFn DensityFn::zero(Modulus m) {
  return DensityFn(m, std::vector<double>(static_cast<std::size_t>(m.n()), 0.0), true);
}

DensityFn DensityFn::indicator(const ZnSet& s) { return DensityFn(s.modulus(), as_doubles(s), true); }

DensityFn DensityFn::measure(const ZnSet& t) {
  if (t.empty()) throw Error("EmptyBase", "uniform measure of the empty set");
  auto v = as_doubles(t);
  const double inv = 1.0 / static_cast<double>(t.size());
  for (auto& x : v) x *= inv;
  return DensityFn(t.modulus(), std::move(v), false);
}

double DensityFn::sum() const noexcept {
  double s = 0.0;
  for (const auto v : values_) s += v;
  return s;
}

double DensityFn::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

DensityFn DensityFn::scaled(double factor) const {
  auto v = values_;
  for (auto& x : v) x *= factor;
  return DensityFn(mod_, std::move(v), false);
}

DensityFn convolve_direct(const DensityFn& f, const DensityFn& g) {
  require_same(f.modulus(), g.modulus());
  const auto n = static_cast<std::size_t>(f.n());
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<double> out(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) {
    if (fv[y] == 0.0) continue;
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t x = y + z < n ? y + z : y + z - n;
      out[x] += fv[y] * gv[z];
    }
  }
  return DensityFn(f.modulus(), std::move(out), f.integral() && g.integral());
}

DensityFn convolve(const DensityFn& f, const DensityFn& g) {
  require_same(f.modulus(), g.modulus());
  if (f.n() <= kDirectConvolutionLimit) return convolve_direct(f, g);
  auto out = fft::cyclic_convolve(f.values(), g.values());
  const bool integral = f.integral() && g.integral();
  if (integral) {
    for (auto& v : out) v = round_checked(v);
  }
  return DensityFn(f.modulus(), std::move(out), integral);
}

double linf_dist(const DensityFn& f, const DensityFn& g) {
  require_same(f.modulus(), g.modulus());
  double best = 0.0;
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::size_t i = 0; i < fv.size(); ++i) best = std::max(best, std::abs(fv[i] - gv[i]));
  return best;
}

std::vector<std::int64_t> convolve_counts(const ZnSet& a, const ZnSet& b) {
  const auto c = convolve(DensityFn::indicator(a), DensityFn::indicator(b));
  std::vector<std::int64_t> out(c.values().size());
  std::transform(c.values().begin(), c.values().end(), out.begin(),
                 [](double v) { return static_cast<std::int64_t>(std::llround(v)); });
  return out;
}

ZnSet sumset(const ZnSet& a, const ZnSet& b) {
  const auto counts = convolve_counts(a, b);
  std::vector<std::int64_t> elems;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x] > 0) elems.push_back(static_cast<std::int64_t>(x));
  }
  return ZnSet(a.modulus(), elems);
}

namespace detail {

std::int64_t count_convex_cyclic(const ZnSet& a, std::span<const std::int64_t, 3> coeffs, std::int64_t b) {
  const auto& m = a.modulus();
  if (a.empty()) return 0;
  std::array<ZnSet, 3> parts{dilate(a, coeffs[0]).set, dilate(a, coeffs[1]).set, dilate(a, coeffs[2]).set};
  const bool same = coeffs[0] == coeffs[1] && coeffs[1] == coeffs[2];
  for (const auto& p : parts) {
    if (p.size() != a.size()) throw Error("NonPrimeModulus", "coefficient is not a unit mod n");
  }
  std::vector<std::int64_t> triple(static_cast<std::size_t>(m.n()), 0);
  if (m.n() <= kDirectConvolutionLimit) {
    const auto pair = convolve_counts(parts[0], parts[1]);
    const auto third = parts[2].elements();
    for (std::size_t s = 0; s < pair.size(); ++s) {
      if (pair[s] == 0) continue;
      for (const auto z : third) triple[static_cast<std::size_t>(m.add(static_cast<Residue>(s), z))] += pair[s];
    }
  } else if (same) {
    const auto cube = fft::cyclic_cube(as_doubles(parts[0]));
    for (std::size_t x = 0; x < cube.size(); ++x) triple[x] = static_cast<std::int64_t>(round_checked(cube[x]));
  } else {
    const auto pair = fft::cyclic_convolve(as_doubles(parts[0]), as_doubles(parts[1]));
    const auto full = fft::cyclic_convolve(pair, as_doubles(parts[2]));
    for (std::size_t x = 0; x < full.size(); ++x) triple[x] = static_cast<std::int64_t>(round_checked(full[x]));
  }
  std::int64_t total = 0;
  a.for_each([&](Residue w) { total += triple[static_cast<std::size_t>(m.mul(b, w))]; });
  return total;
}

}  // namespace detail

SolutionCount count_solutions(const ZnSet& a) {
  const auto n = a.n();
  // The count is a direct sum over w and needs no inverse of 3; it is only
  // refused for composite moduli where 3 collapses residues.
  if (n % 3 == 0 && !a.modulus().is_prime()) {
    throw Error("NonPrimeModulus", "3 divides the composite modulus " + std::to_string(n));
  }
  static constexpr std::array<std::int64_t, 3> kOnes{1, 1, 1};
  SolutionCount c;
  c.total = detail::count_convex_cyclic(a, kOnes, 3);
  c.trivial = a.size();
  c.nontrivial = c.total - c.trivial;
  return c;
}

SolutionCount count_solutions_interval(std::span<const std::int64_t> a) {
  if (a.empty()) return {};
  std::int64_t top = 0;
  for (const auto x : a) {
    if (x < 1) throw Error("InvalidArgument", "interval elements must be >= 1");
    top = std::max(top, x);
  }
  std::vector<double> ind(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto x : a) ind[static_cast<std::size_t>(x)] = 1.0;
  std::vector<std::int64_t> distinct;
  for (std::size_t x = 1; x < ind.size(); ++x) {
    if (ind[x] != 0.0) distinct.push_back(static_cast<std::int64_t>(x));
  }

  std::vector<std::int64_t> triple(3 * ind.size(), 0);
  if (top <= kDirectConvolutionLimit) {
    std::vector<std::int64_t> pair(2 * ind.size(), 0);
    for (const auto x : distinct) {
      for (const auto y : distinct) ++pair[static_cast<std::size_t>(x + y)];
    }
    for (std::size_t s = 0; s < pair.size(); ++s) {
      if (pair[s] == 0) continue;
      for (const auto z : distinct) triple[s + static_cast<std::size_t>(z)] += pair[s];
    }
  } else {
    const auto cube = fft::linear_cube(ind);
    for (std::size_t x = 0; x < cube.size(); ++x) triple[x] = static_cast<std::int64_t>(round_checked(cube[x]));
  }
  SolutionCount c;
  for (const auto w : distinct) c.total += triple[static_cast<std::size_t>(3 * w)];
  c.trivial = static_cast<std::int64_t>(distinct.size());
  c.nontrivial = c.total - c.trivial;
  return c;
}

double relative_density(const ZnSet& a, const ZnSet& t) {
  if (t.empty()) throw Error("EmptyBase", "relative density in the empty set");
  return static_cast<double>(a.intersect(t).size()) / static_cast<double>(t.size());
}

}  // namespace bohrlab
