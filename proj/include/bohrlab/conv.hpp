#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bohrlab/zn.hpp"

namespace bohrlab {

/// Sizes up to this use the direct double loop; above it, the transform.
inline constexpr std::int64_t kDirectConvolutionLimit = 512;

/// Real-valued function on Z_n. `integral` marks functions known to take
/// integer values (indicators and their convolutions); convolving two such
/// functions rounds the result and aborts if any entry strays more than 0.25
/// from an integer.
class DensityFn {
 public:
  DensityFn(Modulus m, std::vector<double> values, bool integral = false);

  static DensityFn zero(Modulus m);
  static DensityFn indicator(const ZnSet& s);
  /// 1_T / |T|.
  static DensityFn measure(const ZnSet& t);

  const Modulus& modulus() const noexcept { return mod_; }
  std::int64_t n() const noexcept { return mod_.n(); }
  bool integral() const noexcept { return integral_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(Residue x) const noexcept { return values_[static_cast<std::size_t>(mod_.reduce(x))]; }
  double sum() const noexcept;
  double max() const noexcept;
  DensityFn scaled(double factor) const;

 private:
  Modulus mod_;
  std::vector<double> values_;
  bool integral_;
};

DensityFn convolve(const DensityFn& f, const DensityFn& g);
DensityFn convolve_direct(const DensityFn& f, const DensityFn& g);
double linf_dist(const DensityFn& f, const DensityFn& g);

/// 1_A * 1_B as exact integers.
std::vector<std::int64_t> convolve_counts(const ZnSet& a, const ZnSet& b);
/// A + B, read off the support of 1_A * 1_B.
ZnSet sumset(const ZnSet& a, const ZnSet& b);

struct SolutionCount {
  std::int64_t total = 0;
  std::int64_t trivial = 0;     // x = y = z = w
  std::int64_t nontrivial = 0;
  friend bool operator==(const SolutionCount&, const SolutionCount&) = default;
};

/// Quadruples (x, y, z, w) in A^4 with x + y + z = 3w in Z_n.
SolutionCount count_solutions(const ZnSet& a);

/// Same count over the integers for A ⊆ {1..M}.
SolutionCount count_solutions_interval(std::span<const std::int64_t> a);

/// |A ∩ T| / |T|.
double relative_density(const ZnSet& a, const ZnSet& t);

namespace detail {
/// Counts (x_1..x_k, w) in A^{k+1} with sum a_i x_i = b w (mod n), for k = 3.
std::int64_t count_convex_cyclic(const ZnSet& a, std::span<const std::int64_t, 3> coeffs, std::int64_t b);
}  // namespace detail

}  // namespace bohrlab
