#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace bohrlab {

// Every logarithm below is base 2. N and rho are carried as log2 values
// because thresholds reach 2^(10^6) and radii underflow doubles.

enum class Branch { main, old };
enum class KPolicy { worst_case, adversarial_max_d, sampled };

struct IterState {
  std::int64_t i = 0;
  double d = 1.0;
  double log2_rho = 1.0;  // rho_0 = 2
  double alpha = 0.0;
  Branch branch = Branch::main;  // branch that produced this state
  std::int64_t k = 0;            // main branch only
  std::int64_t k_max = 0;
  double h = 0.0;
  bool terminal = false;  // density pushed past 1
};

struct SimConfig {
  double c = 1.0;
  double C = 1.0;
  double c0 = 0.18393972058572117;  // 1/(2e)
  KPolicy k_policy = KPolicy::worst_case;
  std::uint64_t seed = 0;  // sampled policy only
  double alpha0 = 0.0;
  double log2_n = std::numeric_limits<double>::infinity();
  bool old_only = false;

  void validate() const;
};

double h_of(double alpha);
/// ceil(log log(1/alpha^9) / log h).
std::int64_t k_max_of(double alpha, double h);

/// Main increment. k follows the policy unless `k_override` > 0; the sampled
/// policy needs the override since the draw belongs to the caller's stream.
IterState step_main(const IterState& s, const SimConfig& cfg, std::int64_t k_override = 0);
IterState step_old(const IterState& s, const SimConfig& cfg);

/// log2 of (C d / alpha)^{5d} (rho/2pi)^{-d}: the N below which the state
/// cannot continue.
double required_log2_n(const IterState& s, const SimConfig& cfg);

enum class Verdict { trivial, size_condition_failed, density_exhausted };
std::string to_string(Verdict v);

struct Aggregates {
  double sum_inv_h_k = 0.0;        // sum 1/h^k over main steps
  double sum_inv_h_k1 = 0.0;       // sum 1/h^(k-1)
  double loglog_alpha0 = 0.0;      // log log(1/alpha0)
  double exp2sqrt_loglog = 0.0;    // exp(2 sqrt(log log(1/alpha0)))
  double min_increment_margin = std::numeric_limits<double>::infinity();  // min log2(alpha'/alpha) - 1/(9h)
  bool increment_ok = true;
  std::int64_t main_steps = 0;
  std::int64_t old_steps = 0;
};

struct RunResult {
  std::vector<IterState> trace;  // states after each step; the initial state is not included
  Verdict verdict = Verdict::trivial;
  std::int64_t steps = 0;
  double threshold_log2_n = 0.0;  // max over visited states of required_log2_n
  double implied_log2_n = 0.0;    // 5 d_s log(C d_s / rho_s alpha_s) at the last live state
  bool implied_holds = false;     // log2 N < implied_log2_n when the size condition failed
  IterState last_live;            // final state that still had density <= 1
  Aggregates agg;

  std::string trace_csv() const;
};

inline constexpr std::int64_t kSimStepGuard = 1000000;

RunResult run(const SimConfig& cfg);

/// Smallest log2 N for which the recursion runs until the density is exhausted.
double threshold_log2_n(SimConfig cfg);

struct SweepRow {
  double alpha0;
  double log2_n_threshold;
  std::int64_t steps;
  double d_final;
  double log2_rho_final;
};

struct Sweep {
  std::vector<SweepRow> rows;
  double fitted_exponent = 0.0;   // slope of log log N on log log(1/alpha0)
  double r2 = 0.0;
  // The bound's correction term exp(C sqrt(log log .)) read with the inner
  // argument as 1/alpha or as N; either changes the fitted exponent.
  double exponent_alpha_reading = 0.0;
  double exponent_n_reading = 0.0;

  /// `alpha0,logN_threshold,steps,d_final,log_rho_final,fitted_exponent`
  std::string to_csv() const;
};

Sweep sweep(const SimConfig& base, std::span<const double> alphas, unsigned threads = 1);

struct SchemeComparison {
  Sweep main;
  Sweep old;
  /// `alpha0,scheme,logN_threshold,steps,fitted_exponent,density_exponent`
  std::string to_csv() const;
};

/// Density exponents are the reciprocals 1/e of the threshold exponents.
SchemeComparison compare_schemes(const SimConfig& base, std::span<const double> alphas, unsigned threads = 1);

/// 2^-lo, ..., 2^-hi in steps of `stride` in the exponent.
std::vector<double> dyadic_grid(int lo, int hi, int stride = 1);

}  // namespace bohrlab
