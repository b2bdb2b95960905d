#include "bohrlab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohrlab/csv.hpp"

namespace bohrlab {

BohrSpec BohrSpec::make(Modulus m, std::span<const std::int64_t> gamma, double radius) {
  if (!(radius >= 0.0)) throw Error("InvalidArgument", "Bohr radius must be >= 0");
  std::vector<Residue> g;
  for (const auto t : gamma) {
    const auto r = m.reduce(t);
    if (r != 0) g.push_back(r);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return BohrSpec{m, std::move(g), std::min(radius, 2.0)};
}

RadiusProfile::RadiusProfile(const Modulus& m, std::span<const Residue> gamma)
    : values_(static_cast<std::size_t>(m.n()), 0.0) {
  const auto n = m.n();
  if (!gamma.empty()) {
    std::vector<double> chord(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r) chord[static_cast<std::size_t>(r)] = char_distance(1, r, m);
    for (const auto t : gamma) {
      Residue r = 0;
      for (std::int64_t x = 0; x < n; ++x) {
        auto& v = values_[static_cast<std::size_t>(x)];
        v = std::max(v, chord[static_cast<std::size_t>(r)]);
        r += t;
        if (r >= n) r -= n;
      }
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

std::int64_t RadiusProfile::count_within(double r) const noexcept {
  return std::upper_bound(sorted_.begin(), sorted_.end(), r + kBohrGuard) - sorted_.begin();
}

std::int64_t RadiusProfile::count_below(double v) const noexcept {
  return std::lower_bound(sorted_.begin(), sorted_.end(), v) - sorted_.begin();
}

BohrSet build_with_profile(const BohrSpec& spec, std::shared_ptr<const RadiusProfile> profile) {
  std::vector<std::int64_t> elems;
  const auto values = profile->values();
  const double limit = spec.radius + kBohrGuard;
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x] <= limit) elems.push_back(static_cast<std::int64_t>(x));
  }
  ZnSet set(spec.modulus, elems);
  return BohrSet(spec, std::move(set), std::move(profile));
}

BohrSet build(const BohrSpec& spec) {
  return build_with_profile(spec, std::make_shared<const RadiusProfile>(spec.modulus, spec.gamma));
}

BohrSet dilate_radius(const BohrSet& b, double delta) {
  if (!(delta >= 0.0)) throw Error("InvalidArgument", "dilation factor must be >= 0");
  BohrSpec spec = b.spec();
  spec.radius = std::min(2.0, delta * b.radius());
  return build_with_profile(spec, b.profile_ptr());
}

SizeBoundsReport check_size_bounds(const BohrSet& b, int grid_points) {
  const double d = b.rank();
  const double size = static_cast<double>(b.size());
  const double rho = b.radius();
  const double n = static_cast<double>(b.spec().modulus.n());
  SizeBoundsReport r{};

  const double lower_rhs = std::pow(rho / (2.0 * std::numbers::pi), d) * n;
  r.lower_ok = size >= lower_rhs;
  r.lower_slack = size / lower_rhs;

  const double size2 = static_cast<double>(b.profile().count_within(std::min(2.0, 2.0 * rho)));
  r.doubling_ok = size2 <= std::pow(6.0, d) * size;
  r.doubling_slack = std::pow(6.0, d) * size / size2;

  r.dilation_ok = true;
  r.dilation_slack = INFINITY;
  r.worst_delta = 1.0;
  for (int k = 1; k <= grid_points; ++k) {
    const double delta = static_cast<double>(k) / grid_points;
    const double sub = static_cast<double>(b.profile().count_within(delta * rho));
    const double rhs = std::pow(delta / 2.0, 3.0 * d) * size;
    if (sub < rhs) r.dilation_ok = false;
    const double slack = sub / rhs;
    if (slack < r.dilation_slack) {
      r.dilation_slack = slack;
      r.worst_delta = delta;
    }
  }
  return r;
}

namespace {

struct Probe {
  double delta;
  std::int64_t count;
  bool check_lower;
  bool check_upper;
};

// Certifies regularity of B(Γ, r0) given the profile of Γ.
RegularityReport regularity_at(const RadiusProfile& profile, int rank, double r0, std::int64_t n,
                               RegularityMode mode, int grid_points) {
  RegularityReport rep;
  if (rank == 0 || r0 == 0.0) {
    // Every perturbed radius yields the same set.
    rep.delta_grid = {0.0};
    rep.ratios = {1.0};
    rep.pass = {true};
    return rep;
  }
  if (mode == RegularityMode::automatic) {
    mode = n <= 100000 ? RegularityMode::exact_breakpoints : RegularityMode::grid;
  }
  const double width = 1.0 / (100.0 * rank);
  const double base = static_cast<double>(profile.count_within(r0));
  std::vector<Probe> probes;

  if (mode == RegularityMode::grid) {
    const int g = std::max(grid_points, 2);
    for (int j = 0; j < g; ++j) {
      const double dp = -width + 2.0 * width * j / (g - 1);
      probes.push_back({dp, profile.count_within(r0 * (1.0 + dp)), true, true});
    }
  } else {
    // |B_{1+δ'}| is a right-continuous step function of δ'. Above zero the
    // worst case sits on a jump (count includes the new points); below zero it
    // is the left limit at a jump (count excludes them).
    const auto sorted = profile.sorted();
    const double lo = r0 * (1.0 - width);
    const double hi = r0 * (1.0 + width);
    auto it = std::upper_bound(sorted.begin(), sorted.end(), lo + kBohrGuard);
    for (; it != sorted.end() && *it - kBohrGuard <= hi; ++it) {
      if (it != sorted.begin() && *(it - 1) == *it) continue;
      const double jump_radius = *it - kBohrGuard;
      const double dp = jump_radius / r0 - 1.0;
      if (dp > 0.0) {
        probes.push_back({dp, profile.count_within(jump_radius), false, true});
      } else {
        probes.push_back({dp, profile.count_below(*it), true, false});
      }
    }
    probes.push_back({-width, profile.count_within(lo), true, false});
    probes.push_back({width, profile.count_within(hi), false, true});
    std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) { return a.delta < b.delta; });
  }

  const double slope = 100.0 * rank;
  for (const auto& p : probes) {
    const double ratio = static_cast<double>(p.count) / base;
    const double band = slope * std::abs(p.delta);
    double excess = 0.0;
    if (p.check_lower) excess = std::max(excess, (1.0 - band) - ratio);
    if (p.check_upper) excess = std::max(excess, ratio - (1.0 + band));
    const bool ok = excess <= 1e-12;
    rep.delta_grid.push_back(p.delta);
    rep.ratios.push_back(ratio);
    rep.pass.push_back(ok);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (!ok && rep.is_regular) {
      rep.is_regular = false;
      rep.witness_violation = p.delta;
    }
  }
  return rep;
}

}  // namespace

std::string RegularityReport::to_csv() const {
  std::string out = csv::row({"delta", "ratio", "pass"});
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    out += csv::row({csv::num(delta_grid[i]), csv::num(ratios[i]), pass[i] ? "1" : "0"});
  }
  return out;
}

RegularityReport regularity_report(const BohrSet& b, RegularityMode mode, int grid_points) {
  return regularity_at(b.profile(), b.rank(), b.radius(), b.spec().modulus.n(), mode, grid_points);
}

RegularRadius find_regular_radius(const BohrSet& b, std::optional<double> grid_step, RegularityMode mode) {
  const int d = b.rank();
  if (d == 0) {
    auto set = dilate_radius(b, 0.5);
    auto rep = regularity_report(set, mode);
    return {0.5, std::move(set), std::move(rep)};
  }
  const double step = grid_step.value_or(1.0 / (800.0 * d));
  if (!(step > 0.0) || step > 1.0 / (400.0 * d) + 1e-15) {
    throw Error("InvalidArgument", "grid step must lie in (0, 1/(400d)]");
  }
  const auto n = b.spec().modulus.n();
  double finest = INFINITY;
  const auto steps = static_cast<long>(std::floor(0.5 / step + 1e-9));
  for (long j = 0; j <= steps; ++j) {
    const double delta = 0.5 + static_cast<double>(j) * step;
    const double r0 = std::min(2.0, delta * b.radius());
    auto rep = regularity_at(b.profile(), d, r0, n, mode, 64);
    if (rep.is_regular) {
      auto set = dilate_radius(b, delta);
      return {delta, std::move(set), std::move(rep)};
    }
    finest = std::min(finest, rep.worst_excess);
  }
  throw NoRegularRadius(finest, "no regular dilate in [1/2, 1] at step " + csv::num(step) +
                                    "; finest band violation " + csv::num(finest));
}

}  // namespace bohrlab
