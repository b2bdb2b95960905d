#pragma once

#include <span>
#include <vector>

namespace bohrlab {

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};

/// Ordinary least squares y ≈ slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares y ≈ sum_j beta_j * columns[j]; include a column of ones for
/// an intercept.
std::vector<double> fit_columns(const std::vector<std::vector<double>>& columns, std::span<const double> y);

}  // namespace bohrlab
