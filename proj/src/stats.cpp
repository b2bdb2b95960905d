#include "bohrlab/stats.hpp"

#include <Eigen/Dense>

#include "bohrlab/error.hpp"

namespace bohrlab {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("InvalidArgument", "fit needs >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("InvalidArgument", "fit needs distinct x values");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, my - slope * mx, r2};
}

std::vector<double> fit_columns(const std::vector<std::vector<double>>& columns, std::span<const double> y) {
  const auto rows = static_cast<Eigen::Index>(y.size());
  const auto cols = static_cast<Eigen::Index>(columns.size());
  if (cols == 0 || rows < cols) throw Error("InvalidArgument", "underdetermined fit");
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    rhs(i) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& c = columns[static_cast<std::size_t>(j)];
      if (static_cast<Eigen::Index>(c.size()) != rows) throw Error("InvalidArgument", "column length mismatch");
      x(i, j) = c[static_cast<std::size_t>(i)];
    }
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(rhs);
  return {beta.data(), beta.data() + beta.size()};
}

}  // namespace bohrlab
