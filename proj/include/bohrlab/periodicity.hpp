#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohrlab/bohr.hpp"
#include "bohrlab/conv.hpp"
#include "bohrlab/rng.hpp"
#include "bohrlab/zn.hpp"

namespace bohrlab {

/// (ε, ε₁, η, K, σ, γ) for the almost-periodicity statements.
struct PeriodicityParams {
  double eps;
  double eps1;
  double eta;    // |M| / |L|
  double K;      // |A + S| <= K |A|
  double sigma;  // μ_B(S) >= σ
  double gamma;  // pointwise bound on 1_M * μ_T

  void validate() const;
};

struct BernsteinBound {
  double t;
  double variance_sum;
  double max_dev;
};

/// 2 exp(-(t²/2) / (Σ var + t m / 3)).
double bernstein_bound(const BernsteinBound& b);

/// max_x 1_M * μ_T(x), the smallest admissible γ.
double max_smoothed(const ZnSet& m, const ZnSet& t);

/// γ⁻¹ 1_M * μ_T(x) for every x.
std::vector<double> inclusion_probabilities(const ZnSet& m, const ZnSet& t, double gamma);

/// Random R with independent P(x ∈ R) = γ⁻¹ 1_M * μ_T(x).
ZnSet sample_R(const ZnSet& m, const ZnSet& t, double gamma, std::uint64_t seed);
ZnSet sample_R(const ZnSet& m, const ZnSet& t, double gamma, Rng& rng);

struct TrialRecord {
  int trial;
  std::int64_t r_size;
  double size_dev;  // ||R| - γ⁻¹|M||
  double linf_dev;  // ‖1_A*1_R*1_L - γ⁻¹ 1_A*1_M*1_L*μ_T‖_∞
  bool size_hit;
  bool linf_hit;
};

struct SampleReport {
  int trials = 0;
  double size_hits = 0.0;  // fraction of trials within 6 sqrt(γ⁻¹|M|)
  double linf_hits = 0.0;  // fraction within 6|A| sqrt(γ⁻¹|M| log|W|)
  std::int64_t w_size = 0;  // |A + M + L + T|
  double size_threshold = 0.0;
  double linf_threshold = 0.0;
  std::vector<TrialRecord> records;

  /// `trial,size_dev,linf_dev,hit`; hit = both deviations within threshold.
  std::string to_csv() const;
};

/// Samples R `trials` times (trial k uses stream k of `seed`) and measures both
/// concentration events exactly.
SampleReport verify_r_concentration(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t,
                                    double gamma, int trials, std::uint64_t seed, unsigned threads = 1);

struct AlmostPeriod {
  bool holds;
  double achieved;  // ‖1_A*1_M*1_L*μ_T - 1_A*1_M*1_L‖_∞ / (|A||M|)
};

/// Verifies a candidate T against ‖1_A*1_M*1_L*μ_T - 1_A*1_M*1_L‖_∞ <= ε|A||M|.
AlmostPeriod check_almost_period(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t, double eps);

/// Each constituent of the triangle-inequality assembly, recomputed exactly.
struct AssemblyTerms {
  double w_log;  // log2 |A + M + L + T|
  double t_smoothing, t_smoothing_bound;        // ‖F*μ_T - F‖ vs ε|A||M|
  double r_per, r_per_bound;                    // ‖F*μ_T - γ F_R‖ vs 6|A| sqrt(γ|M| log|W|)
  double r_size_dev, r_size_bound;              // ||R| - γ⁻¹|M|| vs 6 sqrt(γ⁻¹|M|)
  double b1_smoothing, b1_smoothing_bound;      // ‖F_R*μ_{B1} - F_R‖ vs ε₁|A||R|
  double b1_stated_bound;                       // ε₁γ⁻¹|A||M| + 6 sqrt(γ⁻¹|M|), as printed
  double composite, composite_bound;            // ‖F*μ_{B1} - F‖ vs (2ε+ε₁)|A||M| + 18|A| sqrt(γ|M| log|W|)
  bool constituents_hold;
  bool composite_holds;
  bool implication_holds() const noexcept { return !constituents_hold || composite_holds; }
};

/// F = 1_A*1_M*1_L, F_R = 1_A*1_R*1_L.
AssemblyTerms assemble_periodicity_bound(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t,
                                         const ZnSet& b1, const ZnSet& r, double eps, double eps1,
                                         double gamma);

struct DichotomyOutcome {
  enum class Kind { witness, increment };
  Kind kind;
  Residue x;      // witness point, or argmax of the incremented function
  int which;      // 1 for B', 2 for B'' (increment only)
  double value;   // 1_A*μ_{B'}(x) for witness, the maximum for increment
  double value2;  // 1_A*μ_{B''}(x) for witness
};

/// Either some x has 1_A*μ_{B'}(x), 1_A*μ_{B''}(x) >= 0.8α, or one of the
/// two sup norms is >= 1.1α. All comparisons are exact in integers.
DichotomyOutcome density_dichotomy(const ZnSet& a, const BohrSet& b, const ZnSet& bp, const ZnSet& bpp,
                                   double alpha, double delta);

/// The `count` frequencies t in [1, n/2] with largest |1̂_M(t)|, ties by smaller t.
std::vector<Residue> top_fourier_frequencies(const ZnSet& m, int count);

/// Bohr set generated by the largest Fourier coefficients of 1_M.
BohrSet candidate_bohr_set(const ZnSet& m, int rank, double radius);

}  // namespace bohrlab
