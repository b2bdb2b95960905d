#include "bohrlab/behrend.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bohrlab/csv.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/stats.hpp"

namespace bohrlab {

namespace {

// Largest constructible number cap*(1 + D + ... + D^{dim-1}), or -1 past `limit`.
std::int64_t max_value(std::int64_t base, int dim, std::int64_t cap, std::int64_t limit) {
  std::int64_t total = 0, power = 1;
  for (int i = 0; i < dim; ++i) {
    if (power > limit) return -1;
    total += cap * power;
    if (total > limit) return -1;
    if (i + 1 < dim) {
      if (power > limit / base) return -1;
      power *= base;
    }
  }
  return total;
}

struct Choice {
  std::int64_t count = 0;
  BehrendParams params;
};

void consider_base(std::int64_t base, std::int64_t m, Choice& best) {
  const std::int64_t cap = (base - 1) / 3;
  if (cap < 1) return;
  std::vector<std::int64_t> hist{1};
  for (int dim = 1;; ++dim) {
    if (max_value(base, dim, cap, m - 1) < 0) break;
    std::vector<std::int64_t> next(hist.size() + static_cast<std::size_t>(cap * cap), 0);
    for (std::size_t s = 0; s < hist.size(); ++s) {
      if (hist[s] == 0) continue;
      for (std::int64_t a = 0; a <= cap; ++a) next[s + static_cast<std::size_t>(a * a)] += hist[s];
    }
    hist = std::move(next);
    const auto it = std::max_element(hist.begin(), hist.end());
    if (*it > best.count) {
      best.count = *it;
      best.params = {base, dim, cap, static_cast<std::int64_t>(it - hist.begin())};
    }
  }
}

std::vector<std::int64_t> enumerate_shell(const BehrendParams& p) {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> power(static_cast<std::size_t>(p.dim), 1);
  for (int i = 1; i < p.dim; ++i) power[static_cast<std::size_t>(i)] = power[static_cast<std::size_t>(i - 1)] * p.base;
  const std::int64_t cap2 = p.digit_cap * p.digit_cap;
  std::function<void(int, std::int64_t, std::int64_t)> rec = [&](int pos, std::int64_t remaining, std::int64_t value) {
    if (pos == p.dim) {
      if (remaining == 0) out.push_back(value + 1);
      return;
    }
    const std::int64_t slots_after = p.dim - pos - 1;
    for (std::int64_t a = 0; a <= p.digit_cap && a * a <= remaining; ++a) {
      const std::int64_t rest = remaining - a * a;
      if (rest > slots_after * cap2) continue;
      rec(pos + 1, rest, value + a * power[static_cast<std::size_t>(pos)]);
    }
  };
  rec(0, p.shell, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::int64_t> shell_histogram(std::int64_t digit_cap, int dim) {
  std::vector<std::int64_t> hist{1};
  for (int i = 0; i < dim; ++i) {
    std::vector<std::int64_t> next(hist.size() + static_cast<std::size_t>(digit_cap * digit_cap), 0);
    for (std::size_t s = 0; s < hist.size(); ++s) {
      for (std::int64_t a = 0; a <= digit_cap; ++a) next[s + static_cast<std::size_t>(a * a)] += hist[s];
    }
    hist = std::move(next);
  }
  return hist;
}

std::string BehrendSet::summary() const {
  return csv::num(static_cast<long long>(m)) + "," + csv::num(static_cast<long long>(elements.size())) + "," +
         csv::num(density()) + "," + csv::num(static_cast<long long>(params.base)) + "," + csv::num(params.dim) +
         "," + csv::num(static_cast<long long>(params.shell));
}

BehrendSet behrend_construct(std::int64_t m, std::optional<std::int64_t> base) {
  if (m < 1) throw Error("InvalidArgument", "M must be >= 1");
  Choice best;
  if (base) {
    if (*base < 4) throw Error("InvalidArgument", "digit base must be >= 4");
    consider_base(*base, m, best);
  } else {
    // Scan around the classical optimum D ≈ exp(sqrt(log M)).
    const double centre = std::exp(std::sqrt(std::log(static_cast<double>(m))));
    const auto hi = static_cast<std::int64_t>(std::max(16.0, std::ceil(8.0 * centre)));
    for (std::int64_t d = 4; d <= hi; ++d) consider_base(d, m, best);
  }
  BehrendSet out;
  out.m = m;
  if (best.count <= 1) {
    out.elements = {1};
    return out;
  }
  out.params = best.params;
  out.elements = enumerate_shell(best.params);
  return out;
}

std::string BehrendCurve::to_csv() const {
  std::string out = csv::row({"M", "size", "density", "base", "dim", "shell"});
  for (const auto& s : sets) {
    out += s.summary() + "\r\n";
  }
  return out;
}

BehrendCurve behrend_density_curve(std::span<const std::int64_t> ms) {
  if (ms.empty()) throw Error("InvalidArgument", "empty M list");
  BehrendCurve curve;
  std::vector<double> xs, ys;
  for (const auto m : ms) {
    curve.sets.push_back(behrend_construct(m));
    const double lm = std::log2(static_cast<double>(m));
    xs.push_back(std::sqrt(lm));
    ys.push_back(-std::log2(curve.sets.back().density()));
    if (lm > 0.0) curve.fitted_c = std::max(curve.fitted_c, ys.back() / xs.back());
  }
  if (xs.size() >= 2 && std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) != xs.end()) {
    const auto fit = fit_line(xs, ys);
    curve.slope = fit.slope;
    curve.intercept = fit.intercept;
    curve.r2 = fit.r2;
  }
  return curve;
}

}  // namespace bohrlab
