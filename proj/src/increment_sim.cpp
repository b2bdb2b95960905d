#include "bohrlab/increment_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohrlab/csv.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/parallel.hpp"
#include "bohrlab/rng.hpp"
#include "bohrlab/stats.hpp"

namespace bohrlab {

namespace {

const double kLog2TwoPi = std::log2(2.0 * std::numbers::pi);

bool main_domain(double alpha) { return alpha > 0.0 && alpha < 0.5; }

double loglog(double alpha) { return std::log2(std::log2(1.0 / alpha)); }

struct MainTerms {
  double h, lh, ll;
  std::int64_t k_max;
};

MainTerms main_terms(double alpha) {
  if (!(alpha > 0.0) || alpha >= 1.0) throw Error("DegenerateDensity", "density must lie in (0,1)");
  const double ll = loglog(alpha);
  if (!(ll > 0.0)) throw Error("DegenerateDensity", "log log(1/alpha) must be positive");
  const double h = std::exp(std::sqrt(ll));
  return {h, std::log2(h), ll, k_max_of(alpha, h)};
}

double d_main(const IterState& s, const SimConfig& cfg, const MainTerms& t, std::int64_t k) {
  const double hk1 = std::pow(t.h, static_cast<double>(k - 1));
  const double inner = t.ll + std::log2(1.0 / s.alpha) / hk1;
  return s.d + cfg.C * inner * inner * inner * std::pow(std::log2(2.0 / s.alpha), 1.0 + 2.0 / t.lh);
}

}  // namespace

void SimConfig::validate() const {
  if (!(c > 0.0 && c <= 1.0 && C >= 1.0)) throw Error("InvalidArgument", "need 0 < c <= 1 <= C");
  if (!(c0 > 0.0 && c0 < 1.0)) throw Error("InvalidArgument", "c0 must lie in (0,1)");
  if (!(alpha0 > 0.0)) throw Error("InvalidArgument", "alpha0 must be positive");
  if (std::isnan(log2_n)) throw Error("InvalidArgument", "log2 N is NaN");
}

double h_of(double alpha) { return std::exp(std::sqrt(loglog(alpha))); }

std::int64_t k_max_of(double alpha, double h) {
  const double k = std::ceil(std::log2(9.0 * std::log2(1.0 / alpha)) / std::log2(h));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
}

IterState step_main(const IterState& s, const SimConfig& cfg, std::int64_t k_override) {
  const MainTerms t = main_terms(s.alpha);
  std::int64_t k = t.k_max;
  if (k_override > 0) {
    if (k_override > t.k_max) throw Error("InvalidArgument", "k above its ceiling");
    k = k_override;
  } else if (cfg.k_policy == KPolicy::adversarial_max_d) {
    double worst = -1.0;
    for (std::int64_t j = 1; j <= t.k_max; ++j) {
      const double dj = d_main(s, cfg, t, j);
      if (dj > worst) {
        worst = dj;
        k = j;
      }
    }
  }
  IterState n;
  n.i = s.i + 1;
  n.branch = Branch::main;
  n.k = k;
  n.k_max = t.k_max;
  n.h = t.h;
  n.d = d_main(s, cfg, t, k);
  const double hk1 = std::pow(t.h, static_cast<double>(k - 1));
  n.log2_rho = std::log2(cfg.c) + s.log2_rho + std::log2(s.alpha) / (2.0 * hk1) - 5.0 * std::log2(s.d) -
               std::log2(n.d) - t.ll / t.lh;
  n.alpha = std::exp2(std::log2(s.alpha) * (1.0 - 1.0 / (hk1 * t.h)));
  return n;
}

IterState step_old(const IterState& s, const SimConfig& cfg) {
  if (!(s.alpha > 0.0) || !(s.d > 0.0)) throw Error("DegenerateDensity", "state must be positive");
  IterState n;
  n.i = s.i + 1;
  n.branch = Branch::old;
  const double l = std::log2(2.0 / s.alpha);
  n.d = s.d + cfg.C * l * l * l * l;
  n.log2_rho = std::log2(cfg.c) + s.log2_rho + 1.5 * std::log2(s.alpha) - 5.0 * std::log2(s.d) - std::log2(n.d);
  n.alpha = 1.25 * s.alpha;
  n.terminal = n.alpha > 1.0;
  return n;
}

double required_log2_n(const IterState& s, const SimConfig& cfg) {
  return 5.0 * s.d * std::log2(cfg.C * s.d / s.alpha) - s.d * (s.log2_rho - kLog2TwoPi);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::trivial: return "trivial";
    case Verdict::size_condition_failed: return "size_condition_failed";
    case Verdict::density_exhausted: return "density_exhausted";
  }
  return "unknown";
}

RunResult run(const SimConfig& cfg) {
  cfg.validate();
  RunResult out;
  out.last_live.alpha = cfg.alpha0;
  if (cfg.alpha0 >= 1.0) return out;
  out.agg.loglog_alpha0 = main_domain(cfg.alpha0) ? loglog(cfg.alpha0) : 0.0;
  out.agg.exp2sqrt_loglog = std::exp(2.0 * std::sqrt(std::max(0.0, out.agg.loglog_alpha0)));
  Rng rng(cfg.seed);
  IterState s;
  s.alpha = cfg.alpha0;
  out.threshold_log2_n = -std::numeric_limits<double>::infinity();
  for (;;) {
    const double req = required_log2_n(s, cfg);
    out.threshold_log2_n = std::max(out.threshold_log2_n, req);
    out.implied_log2_n = 5.0 * s.d * (std::log2(cfg.C * s.d) - s.log2_rho - std::log2(s.alpha));
    if (cfg.log2_n < req) {
      out.verdict = Verdict::size_condition_failed;
      out.implied_holds = cfg.log2_n < out.implied_log2_n;
      break;
    }
    if (out.steps >= kSimStepGuard) throw Error("NonTermination", "step guard reached");
    IterState next;
    if (!cfg.old_only && s.alpha <= cfg.c0 && main_domain(s.alpha)) {
      std::int64_t k = 0;
      if (cfg.k_policy == KPolicy::sampled) k = rng.uniform_int(1, main_terms(s.alpha).k_max);
      next = step_main(s, cfg, k);
      const double inv = 1.0 / std::pow(next.h, static_cast<double>(next.k));
      out.agg.sum_inv_h_k += inv;
      out.agg.sum_inv_h_k1 += inv * next.h;
      const double margin = std::log2(next.alpha / s.alpha) - 1.0 / (9.0 * next.h);
      out.agg.min_increment_margin = std::min(out.agg.min_increment_margin, margin);
      if (margin < 0.0) out.agg.increment_ok = false;
      ++out.agg.main_steps;
    } else {
      next = step_old(s, cfg);
      ++out.agg.old_steps;
    }
    ++out.steps;
    out.trace.push_back(next);
    if (next.terminal) {
      out.verdict = Verdict::density_exhausted;
      break;
    }
    s = next;
  }
  out.last_live = s;
  return out;
}

std::string RunResult::trace_csv() const {
  std::string out = csv::row({"i", "branch", "d", "log2_rho", "alpha", "k", "k_max", "h", "terminal"});
  for (const auto& s : trace) {
    out += csv::row({csv::num(static_cast<long long>(s.i)), s.branch == Branch::main ? "main" : "old", csv::num(s.d),
                     csv::num(s.log2_rho), csv::num(s.alpha), csv::num(static_cast<long long>(s.k)),
                     csv::num(static_cast<long long>(s.k_max)), csv::num(s.h), s.terminal ? "true" : "false"});
  }
  return out;
}

double threshold_log2_n(SimConfig cfg) {
  cfg.log2_n = std::numeric_limits<double>::infinity();
  return run(cfg).threshold_log2_n;
}

Sweep sweep(const SimConfig& base, std::span<const double> alphas, unsigned threads) {
  Sweep out;
  out.rows.resize(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.alpha0 = alphas[i];
    cfg.log2_n = std::numeric_limits<double>::infinity();
    const RunResult r = run(cfg);
    out.rows[i] = {alphas[i], r.threshold_log2_n, r.steps, r.last_live.d, r.last_live.log2_rho};
  });
  std::vector<double> xs, ys, sx, sy, ones;
  for (const auto& r : out.rows) {
    if (!main_domain(r.alpha0) || !(r.log2_n_threshold > 1.0)) continue;
    xs.push_back(loglog(r.alpha0));
    ys.push_back(std::log2(r.log2_n_threshold));
  }
  if (xs.size() >= 2 && std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) != xs.end()) {
    const auto fit = fit_line(xs, ys);
    out.fitted_exponent = fit.slope;
    out.r2 = fit.r2;
  }
  if (xs.size() >= 4) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx.push_back(std::sqrt(xs[i]));
      sy.push_back(std::sqrt(ys[i]));
      ones.push_back(1.0);
    }
    out.exponent_alpha_reading = fit_columns({xs, sx, ones}, ys)[0];
    out.exponent_n_reading = fit_columns({xs, sy, ones}, ys)[0];
  }
  return out;
}

std::string Sweep::to_csv() const {
  std::string out = csv::row({"alpha0", "logN_threshold", "steps", "d_final", "log_rho_final", "fitted_exponent"});
  for (const auto& r : rows) {
    out += csv::row({csv::num(r.alpha0), csv::num(r.log2_n_threshold), csv::num(static_cast<long long>(r.steps)),
                     csv::num(r.d_final), csv::num(r.log2_rho_final), csv::num(fitted_exponent)});
  }
  return out;
}

SchemeComparison compare_schemes(const SimConfig& base, std::span<const double> alphas, unsigned threads) {
  SchemeComparison out;
  SimConfig m = base;
  m.old_only = false;
  SimConfig o = base;
  o.old_only = true;
  out.main = sweep(m, alphas, threads);
  out.old = sweep(o, alphas, threads);
  return out;
}

std::string SchemeComparison::to_csv() const {
  std::string out =
      csv::row({"alpha0", "scheme", "logN_threshold", "steps", "fitted_exponent", "density_exponent"});
  for (const auto* s : {&main, &old}) {
    const char* name = s == &main ? "main" : "old";
    const double inv = s->fitted_exponent > 0.0 ? 1.0 / s->fitted_exponent : 0.0;
    for (const auto& r : s->rows) {
      out += csv::row({csv::num(r.alpha0), name, csv::num(r.log2_n_threshold), csv::num(static_cast<long long>(r.steps)),
                       csv::num(s->fitted_exponent), csv::num(inv)});
    }
  }
  return out;
}

std::vector<double> dyadic_grid(int lo, int hi, int stride) {
  if (stride < 1 || lo > hi) throw Error("InvalidArgument", "bad dyadic grid");
  std::vector<double> out;
  for (int e = lo; e <= hi; e += stride) out.push_back(std::exp2(-static_cast<double>(e)));
  return out;
}

}  // namespace bohrlab
