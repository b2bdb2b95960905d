#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohrlab/error.hpp"
#include "bohrlab/zn.hpp"

namespace bohrlab {

/// Tolerance on |1 - gamma(x)| <= rho; points inside the band are included.
inline constexpr double kBohrGuard = 1e-12;

/// Generating set Γ (distinct nonzero residues, ascending) and radius ρ in [0, 2].
struct BohrSpec {
  Modulus modulus;
  std::vector<Residue> gamma;
  double radius;

  /// Reduces frequencies, drops 0 and duplicates, clamps the radius.
  static BohrSpec make(Modulus m, std::span<const std::int64_t> gamma, double radius);
  int rank() const noexcept { return static_cast<int>(gamma.size()); }
};

/// For each x, max over γ ∈ Γ of |1 - γ(x)|, plus the sorted multiset of these
/// values. |B(Γ, r)| for any r is a binary search away.
class RadiusProfile {
 public:
  RadiusProfile(const Modulus& m, std::span<const Residue> gamma);

  double value(Residue x) const noexcept { return values_[static_cast<std::size_t>(x)]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> sorted() const noexcept { return sorted_; }
  /// |B(Γ, r)|.
  std::int64_t count_within(double r) const noexcept;
  /// Number of x whose value is strictly below v.
  std::int64_t count_below(double v) const noexcept;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

class BohrSet {
 public:
  const BohrSpec& spec() const noexcept { return spec_; }
  const ZnSet& elements() const noexcept { return elements_; }
  int rank() const noexcept { return spec_.rank(); }
  double radius() const noexcept { return spec_.radius; }
  std::int64_t size() const noexcept { return elements_.size(); }
  const RadiusProfile& profile() const noexcept { return *profile_; }
  /// Shared between a Bohr set and all of its dilates.
  std::shared_ptr<const RadiusProfile> profile_ptr() const noexcept { return profile_; }

 private:
  BohrSet(BohrSpec spec, ZnSet elements, std::shared_ptr<const RadiusProfile> profile)
      : spec_(std::move(spec)), elements_(std::move(elements)), profile_(std::move(profile)) {}
  friend BohrSet build(const BohrSpec&);
  friend BohrSet build_with_profile(const BohrSpec&, std::shared_ptr<const RadiusProfile>);

  BohrSpec spec_;
  ZnSet elements_;
  std::shared_ptr<const RadiusProfile> profile_;
};

/// B(Γ, ρ) = {x : |1 - γ(x)| <= ρ for all γ ∈ Γ}.
BohrSet build(const BohrSpec& spec);
BohrSet build_with_profile(const BohrSpec& spec, std::shared_ptr<const RadiusProfile> profile);

/// B_δ = B(Γ, δρ).
BohrSet dilate_radius(const BohrSet& b, double delta);

struct SizeBoundsReport {
  bool lower_ok;           // |B| >= (ρ/2π)^d N
  double lower_slack;      // |B| / (ρ/2π)^d N
  bool doubling_ok;        // |B_2| <= 6^d |B|
  double doubling_slack;   // 6^d |B| / |B_2|
  bool dilation_ok;        // |B_δ| >= (δ/2)^{3d} |B| on the whole δ grid
  double dilation_slack;   // min over the grid of |B_δ| / ((δ/2)^{3d} |B|)
  double worst_delta;      // grid point achieving dilation_slack
  bool all_ok() const noexcept { return lower_ok && doubling_ok && dilation_ok; }
};

/// Evaluates the three Bohr size inequalities; δ runs over k/grid_points, k = 1..grid_points.
SizeBoundsReport check_size_bounds(const BohrSet& b, int grid_points = 32);

enum class RegularityMode {
  automatic,          // exact breakpoints for n <= 1e5, else grid
  exact_breakpoints,  // every jump of |B_{1+δ'}| inside the window
  grid,               // equally spaced δ' over the window
};

struct RegularityReport {
  std::vector<double> delta_grid;  // perturbations δ' tested
  std::vector<double> ratios;      // |B_{1+δ'}| / |B|
  std::vector<bool> pass;
  bool is_regular = true;
  std::optional<double> witness_violation;  // first failing δ'
  double worst_excess = 0.0;                // largest amount by which a ratio leaves its band
  double min_ratio = 1.0;
  double max_ratio = 1.0;

  std::string to_csv() const;
};

/// Certifies (1 - 100d|δ'|)|B| <= |B_{1+δ'}| <= (1 + 100d|δ'|)|B| for |δ'| <= 1/(100d).
RegularityReport regularity_report(const BohrSet& b, RegularityMode mode = RegularityMode::automatic,
                                   int grid_points = 64);

struct RegularRadius {
  double delta;
  BohrSet set;  // B_δ
  RegularityReport report;
};

class NoRegularRadius : public Error {
 public:
  NoRegularRadius(double finest_excess, const std::string& message)
      : Error("NoRegularRadiusAtResolution", message), finest_excess_(finest_excess) {}
  /// Smallest band violation among all candidate δ.
  double finest_excess() const noexcept { return finest_excess_; }

 private:
  double finest_excess_;
};

/// Scans δ = 1/2, 1/2 + step, ..., 1 and returns the first δ with B_δ regular.
/// Default step is 1/(800d).
RegularRadius find_regular_radius(const BohrSet& b, std::optional<double> grid_step = std::nullopt,
                                  RegularityMode mode = RegularityMode::automatic);

}  // namespace bohrlab
