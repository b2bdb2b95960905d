#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bohrlab {

/// Digits-on-a-sphere parameters: numbers sum a_i D^i with 0 <= a_i <= cap and
/// sum a_i^2 = shell. cap = floor((D-1)/3) keeps x+y+z free of carries.
struct BehrendParams {
  std::int64_t base = 0;
  int dim = 0;
  std::int64_t digit_cap = 0;
  std::int64_t shell = 0;
};

struct BehrendSet {
  std::int64_t m = 0;
  std::vector<std::int64_t> elements;  // ascending, inside {1..m}
  BehrendParams params;                // base == 0 for the degenerate {1}

  double density() const noexcept {
    return static_cast<double>(elements.size()) / static_cast<double>(m);
  }
  /// `M,size,density,base,dim,shell`
  std::string summary() const;
};

std::vector<std::int64_t> shell_histogram(std::int64_t digit_cap, int dim);

/// Largest Behrend set in {1..m} over the scanned (D, n) grid, or with the
/// base fixed when `base` is given.
BehrendSet behrend_construct(std::int64_t m, std::optional<std::int64_t> base = std::nullopt);

struct BehrendCurve {
  std::vector<BehrendSet> sets;
  double slope = 0.0;     // of -log2(density) against sqrt(log2 M)
  double intercept = 0.0;
  double r2 = 0.0;
  double fitted_c = 0.0;  // max over rows of -log2(density)/sqrt(log2 M)

  /// `M,size,density,base,dim,shell`
  std::string to_csv() const;
};

BehrendCurve behrend_density_curve(std::span<const std::int64_t> ms);

}  // namespace bohrlab
