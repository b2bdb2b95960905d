#include "bohrlab/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohrlab/csv.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/parallel.hpp"

namespace bohrlab {

namespace {

bool in_unit_interval(double v) { return v > 0.0 && v < 1.0; }

DensityFn triple(const ZnSet& a, const ZnSet& m, const ZnSet& l) {
  return convolve(convolve(DensityFn::indicator(a), DensityFn::indicator(m)), DensityFn::indicator(l));
}

/// f * μ_T computed as (f * 1_T) / |T|, so integral f stays exact until the division.
DensityFn smooth(const DensityFn& f, const ZnSet& t) {
  if (t.empty()) throw Error("EmptyT", "smoothing by the empty set");
  return convolve(f, DensityFn::indicator(t)).scaled(1.0 / static_cast<double>(t.size()));
}

double log2_sumset_size(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t, std::int64_t* size) {
  const auto w = sumset(sumset(sumset(a, m), l), t);
  if (size) *size = w.size();
  return std::log2(static_cast<double>(w.size()));
}

}  // namespace

void PeriodicityParams::validate() const {
  if (!in_unit_interval(eps) || !in_unit_interval(eps1)) {
    throw Error("InvalidArgument", "eps and eps1 must lie in (0, 1)");
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw Error("InvalidArgument", "eta must lie in (0, 1]");
  if (!(K >= 1.0)) throw Error("InvalidArgument", "doubling bound K must be >= 1");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw Error("InvalidArgument", "sigma must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("InvalidArgument", "gamma must lie in (0, 1]");
}

double bernstein_bound(const BernsteinBound& b) {
  if (!(b.t > 0.0) || !(b.variance_sum > 0.0) || !(b.max_dev > 0.0)) {
    throw Error("InvalidArgument", "Bernstein parameters must be positive");
  }
  return 2.0 * std::exp(-(0.5 * b.t * b.t) / (b.variance_sum + b.t * b.max_dev / 3.0));
}

double max_smoothed(const ZnSet& m, const ZnSet& t) {
  if (t.empty()) throw Error("EmptyT", "smoothing by the empty set");
  const auto c = convolve_counts(m, t);
  return static_cast<double>(*std::max_element(c.begin(), c.end())) / static_cast<double>(t.size());
}

std::vector<double> inclusion_probabilities(const ZnSet& m, const ZnSet& t, double gamma) {
  if (t.empty()) throw Error("EmptyT", "smoothing by the empty set");
  if (!(gamma > 0.0)) throw Error("InvalidArgument", "gamma must be positive");
  const auto c = convolve_counts(m, t);
  const double scale = 1.0 / (gamma * static_cast<double>(t.size()));
  std::vector<double> p(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    p[x] = static_cast<double>(c[x]) * scale;
    if (p[x] > 1.0 + 1e-12) {
      throw Error("ProbabilityOverflow", "P(x in R) = " + csv::num(p[x]) + " at x = " + std::to_string(x) +
                                             "; gamma is below max 1_M*mu_T");
    }
    p[x] = std::min(p[x], 1.0);
  }
  return p;
}

ZnSet sample_R(const ZnSet& m, const ZnSet& t, double gamma, Rng& rng) {
  const auto p = inclusion_probabilities(m, t, gamma);
  std::vector<std::int64_t> elems;
  for (std::size_t x = 0; x < p.size(); ++x) {
    // One draw per point keeps the stream aligned with x.
    if (rng.uniform() < p[x]) elems.push_back(static_cast<std::int64_t>(x));
  }
  return ZnSet(m.modulus(), elems);
}

ZnSet sample_R(const ZnSet& m, const ZnSet& t, double gamma, std::uint64_t seed) {
  Rng rng(seed);
  return sample_R(m, t, gamma, rng);
}

std::string SampleReport::to_csv() const {
  std::string out = csv::row({"trial", "size_dev", "linf_dev", "hit"});
  for (const auto& r : records) {
    out += csv::row({csv::num(r.trial), csv::num(r.size_dev), csv::num(r.linf_dev),
                     (r.size_hit && r.linf_hit) ? "1" : "0"});
  }
  return out;
}

SampleReport verify_r_concentration(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t,
                                    double gamma, int trials, std::uint64_t seed, unsigned threads) {
  if (m.size() < 2) throw Error("HypothesisViolated", "|M| >= 2 required");
  if (t.empty()) throw Error("EmptyT", "smoothing by the empty set");
  if (trials < 1) throw Error("InvalidArgument", "trials must be >= 1");

  SampleReport rep;
  rep.trials = trials;
  const double log_w = log2_sumset_size(a, m, l, t, &rep.w_size);
  const double mass = static_cast<double>(m.size()) / gamma;
  rep.size_threshold = 6.0 * std::sqrt(mass);
  rep.linf_threshold = 6.0 * static_cast<double>(a.size()) * std::sqrt(mass * log_w);

  const auto al = convolve(DensityFn::indicator(a), DensityFn::indicator(l));
  const auto expected = smooth(convolve(al, DensityFn::indicator(m)), t).scaled(1.0 / gamma);
  // Probabilities are validated once up front so worker failures cannot differ by trial.
  (void)inclusion_probabilities(m, t, gamma);

  const Rng root(seed);
  rep.records.resize(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t k) {
    Rng rng = root.split(k);
    const auto r = sample_R(m, t, gamma, rng);
    const auto observed = convolve(al, DensityFn::indicator(r));
    TrialRecord rec;
    rec.trial = static_cast<int>(k);
    rec.r_size = r.size();
    rec.size_dev = std::abs(static_cast<double>(r.size()) - mass);
    rec.linf_dev = linf_dist(observed, expected);
    rec.size_hit = rec.size_dev <= rep.size_threshold;
    rec.linf_hit = rec.linf_dev <= rep.linf_threshold;
    rep.records[k] = rec;
  });

  int size_hits = 0, linf_hits = 0;
  for (const auto& r : rep.records) {
    size_hits += r.size_hit;
    linf_hits += r.linf_hit;
  }
  rep.size_hits = static_cast<double>(size_hits) / trials;
  rep.linf_hits = static_cast<double>(linf_hits) / trials;
  return rep;
}

AlmostPeriod check_almost_period(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t, double eps) {
  if (t.empty()) throw Error("EmptyT", "candidate almost-period set is empty");
  const auto f = triple(a, m, l);
  const double lhs = linf_dist(smooth(f, t), f);
  const double scale = static_cast<double>(a.size()) * static_cast<double>(m.size());
  const double achieved = scale > 0.0 ? lhs / scale : 0.0;
  return {lhs <= eps * scale, achieved};
}

AssemblyTerms assemble_periodicity_bound(const ZnSet& a, const ZnSet& m, const ZnSet& l, const ZnSet& t,
                                         const ZnSet& b1, const ZnSet& r, double eps, double eps1,
                                         double gamma) {
  AssemblyTerms out{};
  out.w_log = log2_sumset_size(a, m, l, t, nullptr);
  const double sa = static_cast<double>(a.size());
  const double sm = static_cast<double>(m.size());
  const double sr = static_cast<double>(r.size());

  const auto f = triple(a, m, l);
  const auto fr = triple(a, r, l);
  const auto f_t = smooth(f, t);

  out.t_smoothing = linf_dist(f_t, f);
  out.t_smoothing_bound = eps * sa * sm;
  out.r_per = linf_dist(f_t, fr.scaled(gamma));
  out.r_per_bound = 6.0 * sa * std::sqrt(gamma * sm * out.w_log);
  out.r_size_dev = std::abs(sr - sm / gamma);
  out.r_size_bound = 6.0 * std::sqrt(sm / gamma);
  out.b1_smoothing = linf_dist(smooth(fr, b1), fr);
  out.b1_smoothing_bound = eps1 * sa * sr;
  out.b1_stated_bound = eps1 * sa * sm / gamma + 6.0 * std::sqrt(sm / gamma);
  out.composite = linf_dist(smooth(f, b1), f);
  out.composite_bound = (2.0 * eps + eps1) * sa * sm + 18.0 * sa * std::sqrt(gamma * sm * out.w_log);

  out.constituents_hold = out.t_smoothing <= out.t_smoothing_bound && out.r_per <= out.r_per_bound &&
                          out.r_size_dev <= out.r_size_bound && out.b1_smoothing <= out.b1_smoothing_bound;
  out.composite_holds = out.composite <= out.composite_bound;
  return out;
}

DichotomyOutcome density_dichotomy(const ZnSet& a, const BohrSet& b, const ZnSet& bp, const ZnSet& bpp,
                                   double alpha, double delta) {
  const auto& bset = b.elements();
  if (!(delta > 0.0)) throw Error("HypothesisViolated", "delta must be positive");
  if (!a.is_subset_of(bset)) throw Error("HypothesisViolated", "A is not contained in B");
  if (bp.empty() || bpp.empty()) throw Error("HypothesisViolated", "B' and B'' must be nonempty");
  const auto b_small = dilate_radius(b, delta);
  if (!bp.is_subset_of(b_small.elements())) throw Error("HypothesisViolated", "B' is not contained in B_delta");
  if (!bpp.is_subset_of(b_small.elements())) throw Error("HypothesisViolated", "B'' is not contained in B_delta");
  const auto b_large = b.profile().count_within(std::min(2.0, (1.0 + delta) * b.radius()));
  if (20 * b.size() < 19 * b_large) {
    throw Error("HypothesisViolated", "|B| < (1 - 1/20)|B_{1+delta}|");
  }
  const double exact_alpha = static_cast<double>(a.size()) / static_cast<double>(b.size());
  if (std::abs(alpha - exact_alpha) > 1e-12) {
    throw Error("HypothesisViolated", "alpha differs from mu_B(A) = " + csv::num(exact_alpha));
  }

  const auto c1 = convolve_counts(a, bp);
  const auto c2 = convolve_counts(a, bpp);
  const __int128 sb = b.size(), sa = a.size();
  // f(x) = c(x)/|B'| >= (num/10) α  <=>  10 c(x) |B| >= num |A| |B'|.
  auto at_least = [&](std::int64_t c, std::int64_t base, int tenths) {
    return 10 * static_cast<__int128>(c) * sb >= static_cast<__int128>(tenths) * sa * base;
  };
  auto argmax = [](const std::vector<std::int64_t>& c) {
    return static_cast<Residue>(std::max_element(c.begin(), c.end()) - c.begin());
  };

  const Residue x1 = argmax(c1), x2 = argmax(c2);
  const double f1max = static_cast<double>(c1[static_cast<std::size_t>(x1)]) / static_cast<double>(bp.size());
  const double f2max = static_cast<double>(c2[static_cast<std::size_t>(x2)]) / static_cast<double>(bpp.size());
  if (at_least(c1[static_cast<std::size_t>(x1)], bp.size(), 11)) {
    return {DichotomyOutcome::Kind::increment, x1, 1, f1max, 0.0};
  }
  if (at_least(c2[static_cast<std::size_t>(x2)], bpp.size(), 11)) {
    return {DichotomyOutcome::Kind::increment, x2, 2, f2max, 0.0};
  }
  for (std::size_t x = 0; x < c1.size(); ++x) {
    if (at_least(c1[x], bp.size(), 8) && at_least(c2[x], bpp.size(), 8)) {
      return {DichotomyOutcome::Kind::witness, static_cast<Residue>(x), 0,
              static_cast<double>(c1[x]) / static_cast<double>(bp.size()),
              static_cast<double>(c2[x]) / static_cast<double>(bpp.size())};
    }
  }
  throw Error("InternalError", "density dichotomy found neither branch");
}

std::vector<Residue> top_fourier_frequencies(const ZnSet& m, int count) {
  const auto n = m.n();
  const auto elems = m.elements();
  std::vector<double> cosv(static_cast<std::size_t>(n)), sinv(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    cosv[static_cast<std::size_t>(r)] = std::cos(angle);
    sinv[static_cast<std::size_t>(r)] = std::sin(angle);
  }
  std::vector<std::pair<double, Residue>> mags;
  for (Residue t = 1; 2 * t <= n; ++t) {
    double re = 0.0, im = 0.0;
    for (const auto x : elems) {
      const auto r = static_cast<std::size_t>(m.modulus().mul(t, x));
      re += cosv[r];
      im -= sinv[r];
    }
    mags.emplace_back(re * re + im * im, t);
  }
  std::stable_sort(mags.begin(), mags.end(), [](const auto& p, const auto& q) { return p.first > q.first; });
  std::vector<Residue> out;
  for (std::size_t i = 0; i < mags.size() && static_cast<int>(out.size()) < count; ++i) out.push_back(mags[i].second);
  return out;
}

BohrSet candidate_bohr_set(const ZnSet& m, int rank, double radius) {
  const auto g = top_fourier_frequencies(m, rank);
  return build(BohrSpec::make(m.modulus(), g, radius));
}

}  // namespace bohrlab
