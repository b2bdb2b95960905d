#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bohrlab/bohr.hpp"
#include "bohrlab/conv.hpp"
#include "bohrlab/periodicity.hpp"
#include "bohrlab/rng.hpp"
#include "bohrlab/sampling.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

std::string error_name(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

// 1_M * μ_T by brute force.
std::vector<double> smoothed(const ZnSet& m, const ZnSet& t) {
  const auto c = oracle::cyclic_convolve(oracle::indicator(m.n(), m.elements()), oracle::indicator(m.n(), t.elements()));
  std::vector<double> out;
  for (const auto v : c) out.push_back(static_cast<double>(v) / static_cast<double>(t.size()));
  return out;
}

}  // namespace

TEST_CASE("bernstein closed form") {
  CHECK(bernstein_bound({1e-12, 1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(bernstein_bound({3.0, 1.0, 1.0}) == doctest::Approx(2.0 * std::exp(-2.25)).epsilon(1e-14));
  for (const double v : {1e4, 1e6, 1e8}) {
    const double b = bernstein_bound({6.0 * std::sqrt(v), v, 1.0});
    CHECK(b <= 2.0 * std::exp(-18.0) * std::exp(36.0 / std::sqrt(v)) * (1 + 1e-12));
    CHECK(b >= 2.0 * std::exp(-18.0));
  }
  CHECK(error_name([] { (void)bernstein_bound({0.0, 1.0, 1.0}); }) == "InvalidArgument");
}

TEST_CASE("params validation") {
  PeriodicityParams ok{0.1, 0.2, 0.5, 3.0, 0.2, 0.5};
  CHECK_NOTHROW(ok.validate());
  PeriodicityParams bad = ok;
  bad.eta = 1.5;
  CHECK(error_name([&] { bad.validate(); }) == "InvalidArgument");
  bad = ok;
  bad.gamma = 0.0;
  CHECK(error_name([&] { bad.validate(); }) == "InvalidArgument");
}

TEST_CASE("sample_R degenerate cases") {
  const Modulus m(101);
  const ZnSet mset(m, {1, 4, 9, 16, 25});
  const ZnSet zero(m, {0});
  CHECK(sample_R(mset, zero, 1.0, 1) == mset);
  CHECK(sample_R(ZnSet(m), zero, 1.0, 1).empty());
  CHECK(error_name([&] { (void)sample_R(mset, zero, 0.5, 1); }) == "ProbabilityOverflow");
  CHECK(error_name([&] { (void)sample_R(mset, ZnSet(m), 1.0, 1); }) == "EmptyT");
  CHECK(sample_R(mset, ZnSet(m, {0, 1, 2}), 1.0, 7) == sample_R(mset, ZnSet(m, {0, 1, 2}), 1.0, 7));
}

TEST_CASE("inclusion probabilities are the smoothed indicator") {
  Rng rng(31);
  const Modulus m(503);
  const ZnSet ms = random_subset(m, 60, rng);
  const ZnSet ts = build(BohrSpec::make(m, std::vector<std::int64_t>{7}, 0.4)).elements();
  const double g = max_smoothed(ms, ts);
  const auto p = inclusion_probabilities(ms, ts, g);
  const auto ref = smoothed(ms, ts);
  double top = 0.0;
  for (std::size_t x = 0; x < ref.size(); ++x) {
    CHECK(p[x] == doctest::Approx(ref[x] / g).epsilon(1e-12));
    top = std::max(top, ref[x]);
  }
  CHECK(g == doctest::Approx(top).epsilon(1e-12));
}

TEST_CASE("sample_R mean size") {
  Rng rng(32);
  const Modulus m(997);
  const ZnSet ms = random_subset(m, 40, rng);
  const ZnSet ts = build(BohrSpec::make(m, std::vector<std::int64_t>{1}, 0.3)).elements();
  const double g = max_smoothed(ms, ts);
  const auto p = inclusion_probabilities(ms, ts, g);
  double mean = 0.0, var = 0.0;
  for (const double q : p) {
    mean += q;
    var += q * (1.0 - q);
  }
  CHECK(mean == doctest::Approx(40.0 / g).epsilon(1e-9));
  const int seeds = 1000;
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) total += static_cast<double>(sample_R(ms, ts, g, static_cast<std::uint64_t>(s)).size());
  const double se = std::sqrt(var / seeds);
  CHECK(std::fabs(total / seeds - mean) <= 3.0 * se);
}

TEST_CASE("sample_R marginals") {
  Rng rng(33);
  const Modulus m(211);
  const ZnSet ms = random_subset(m, 30, rng);
  const ZnSet ts(m, {0, 1, 2, 3, 5, 8, 13});
  const double g = max_smoothed(ms, ts);
  const auto p = inclusion_probabilities(ms, ts, g);
  const int trials = 10000;
  std::vector<int> hits(211, 0);
  Rng draw(34);
  for (int k = 0; k < trials; ++k) sample_R(ms, ts, g, draw).for_each([&](Residue x) { ++hits[static_cast<std::size_t>(x)]; });
  int bad = 0;
  for (std::size_t x = 0; x < hits.size(); ++x) {
    const double freq = static_cast<double>(hits[x]) / trials;
    const double tol = 4.0 * std::sqrt(p[x] * (1.0 - p[x]) / trials);
    if (std::fabs(freq - p[x]) > tol + 1e-15) ++bad;
  }
  CHECK(bad <= 2);  // 99% of 211 points
}

TEST_CASE("verify_r_concentration") {
  const Modulus m(1009);
  Rng rng(35);
  const ZnSet a = random_subset(m, 60, rng);
  const ZnSet ms = random_subset(m, 20, rng);
  const ZnSet l = random_subset(m, 60, rng);
  {
    const auto rep = verify_r_concentration(a, ms, l, ZnSet(m, {0}), 1.0, 5, 1);
    CHECK(rep.size_hits == 1.0);
    CHECK(rep.linf_hits == 1.0);
    for (const auto& r : rep.records) {
      CHECK(r.size_dev == 0.0);
      CHECK(r.linf_dev == 0.0);
    }
  }
  const ZnSet t = candidate_bohr_set(ms, 2, 1.0).elements();
  const double g = max_smoothed(ms, t);
  const auto one = verify_r_concentration(a, ms, l, t, g, 1, 99);
  CHECK(one.to_csv() == verify_r_concentration(a, ms, l, t, g, 1, 99).to_csv());
  const auto serial = verify_r_concentration(a, ms, l, t, g, 40, 5, 1);
  const auto parallel = verify_r_concentration(a, ms, l, t, g, 40, 5, 4);
  CHECK(serial.to_csv() == parallel.to_csv());
  CHECK(serial.to_csv().rfind("trial,size_dev,linf_dev,hit\r\n", 0) == 0);
  CHECK(serial.w_size == sumset(sumset(sumset(a, ms), l), t).size());
  CHECK(serial.size_hits >= 0.75);
  CHECK(serial.linf_hits >= 0.75);
  CHECK(error_name([&] { (void)verify_r_concentration(a, ZnSet(m, {3}), l, t, 1.0, 5, 1); }) == "HypothesisViolated");
}

TEST_CASE("check_almost_period") {
  const Modulus m(211);
  Rng rng(36);
  const ZnSet a = random_subset(m, 50, rng), ms = random_subset(m, 30, rng), l = random_subset(m, 70, rng);
  const auto id = check_almost_period(a, ms, l, ZnSet(m, {0}), 0.0);
  CHECK(id.holds);
  CHECK(id.achieved == 0.0);
  const auto full = ZnSet::full(m);
  const auto flat = check_almost_period(full, full, full, ZnSet(m, {0, 3, 100}), 0.0);
  CHECK(flat.holds);
  CHECK(flat.achieved < 1e-12);
  CHECK(error_name([&] { (void)check_almost_period(a, ms, l, ZnSet(m), 0.1); }) == "EmptyT");

  // achieved ratio on n = 2003 against brute force
  const Modulus big(2003);
  const ZnSet A = random_subset(big, 300, rng), M = random_subset(big, 200, rng), L = random_subset(big, 300, rng);
  const ZnSet T = build(BohrSpec::make(big, std::vector<std::int64_t>{1}, 0.05)).elements();
  const auto got = check_almost_period(A, M, L, T, 0.5);
  const auto f = oracle::cyclic_convolve(
      oracle::cyclic_convolve(oracle::indicator(2003, A.elements()), oracle::indicator(2003, M.elements())),
      oracle::indicator(2003, L.elements()));
  const auto ft = oracle::cyclic_convolve(f, oracle::indicator(2003, T.elements()));
  double worst = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    worst = std::max(worst, std::fabs(static_cast<double>(ft[x]) / static_cast<double>(T.size()) - static_cast<double>(f[x])));
  CHECK(got.achieved == doctest::Approx(worst / (300.0 * 200.0)).epsilon(1e-9));
  CHECK(got.holds == (worst <= 0.5 * 300.0 * 200.0));
  MESSAGE("achieved ratio " << got.achieved << " with |T| = " << T.size());
}

TEST_CASE("triangle assembly") {
  const Modulus m(2003);
  Rng rng(37);
  int constituent_cases = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const ZnSet a = random_subset(m, 150, rng), ms = random_subset(m, 40, rng), l = random_subset(m, 150, rng);
    const ZnSet t = candidate_bohr_set(ms, 1, 0.3 + rng.uniform()).elements();
    const double g = max_smoothed(ms, t);
    Rng draw = rng.split(static_cast<std::uint64_t>(trial));
    const ZnSet r = sample_R(ms, t, g, draw);
    const ZnSet b1 = build(BohrSpec::make(m, std::vector<std::int64_t>{rng.uniform_int(1, 2002)}, 0.05)).elements();
    const auto terms = assemble_periodicity_bound(a, ms, l, t, b1, r, 0.9, 0.9, g);
    CHECK(terms.implication_holds());
    CHECK(terms.w_log == doctest::Approx(std::log2(static_cast<double>(sumset(sumset(sumset(a, ms), l), t).size()))));
    CHECK(terms.b1_stated_bound == doctest::Approx(0.9 * 150.0 * 40.0 / g + 6.0 * std::sqrt(40.0 / g)));
    // the chain the bound is built from
    CHECK(terms.composite <= 2.0 * terms.t_smoothing + 2.0 * terms.r_per + g * terms.b1_smoothing + 1e-6);
    if (terms.constituents_hold) ++constituent_cases;
  }
  MESSAGE("instances with all constituents holding: " << constituent_cases);
}

TEST_CASE("dichotomy examples") {
  const Modulus m(101);
  const auto full = build(BohrSpec::make(m, {}, 1.0));
  const ZnSet zero(m, {0});
  const auto o = density_dichotomy(full.elements(), full, zero, zero, 1.0, 0.5);
  CHECK(o.kind == DichotomyOutcome::Kind::witness);
  CHECK(o.value == 1.0);
  CHECK(o.value2 == 1.0);

  // A concentrated on a translate of B'.
  const Modulus big(4001);
  const auto b = build(BohrSpec::make(big, std::vector<std::int64_t>{1}, 1.0));
  const double delta = 0.02;
  const ZnSet bp = dilate_radius(b, delta).elements();
  const ZnSet a = bp.translate(300).intersect(b.elements());
  const double alpha = static_cast<double>(a.size()) / static_cast<double>(b.size());
  const auto inc = density_dichotomy(a, b, bp, bp, alpha, delta);
  CHECK(inc.kind == DichotomyOutcome::Kind::increment);
  CHECK(inc.value >= 1.1 * alpha);
  CHECK(inc.value == doctest::Approx(1.0));

  // random A of density 0.3 in a rank-1 Bohr set
  Rng rng(38);
  const ZnSet ra = random_subset_of(b.elements(), static_cast<std::int64_t>(0.3 * static_cast<double>(b.size())), rng);
  const double ralpha = static_cast<double>(ra.size()) / static_cast<double>(b.size());
  const ZnSet bpp = dilate_radius(b, delta / 2).elements();
  const auto rnd = density_dichotomy(ra, b, bp, bpp, ralpha, delta);
  if (rnd.kind == DichotomyOutcome::Kind::witness) {
    CHECK(rnd.value >= 0.8 * ralpha);
    CHECK(rnd.value2 >= 0.8 * ralpha);
  } else {
    CHECK(rnd.value >= 1.1 * ralpha);
  }
}

TEST_CASE("dichotomy hypotheses") {
  const Modulus m(4001);
  const auto b = build(BohrSpec::make(m, std::vector<std::int64_t>{1}, 1.0));
  const ZnSet bp = dilate_radius(b, 0.02).elements();
  const ZnSet a(m, {0, 1, 2});
  const double alpha = 3.0 / static_cast<double>(b.size());
  CHECK(error_name([&] { (void)density_dichotomy(ZnSet(m, {2000}), b, bp, bp, 1.0 / static_cast<double>(b.size()), 0.02); }) ==
        "HypothesisViolated");
  CHECK(error_name([&] { (void)density_dichotomy(a, b, bp, ZnSet(m), alpha, 0.02); }) == "HypothesisViolated");
  CHECK(error_name([&] { (void)density_dichotomy(a, b, bp, bp, alpha, 0.01); }) == "HypothesisViolated");
  CHECK(error_name([&] { (void)density_dichotomy(a, b, bp, bp, 0.5, 0.02); }) == "HypothesisViolated");
  CHECK(error_name([&] { (void)density_dichotomy(a, b, bp, bp, alpha, 0.5); }) == "HypothesisViolated");
}

TEST_CASE("top Fourier frequencies") {
  const Modulus m(101);
  std::vector<std::int64_t> ap;
  for (int i = 0; i < 10; ++i) ap.push_back(7 * i);
  const ZnSet s(m, ap);
  const auto top = top_fourier_frequencies(s, 3);
  REQUIRE(top.size() == 3);
  // brute-force magnitudes
  auto mag = [&](std::int64_t t) {
    std::complex<long double> acc = 0;
    for (const auto x : ap) acc += std::polar(1.0L, -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(t * x % 101) / 101.0L);
    return std::abs(acc);
  };
  for (std::int64_t t = 1; t <= 50; ++t) CHECK(mag(top[0]) >= mag(t) - 1e-9);
  CHECK(mag(top[0]) >= mag(top[1]) - 1e-9);
  CHECK(mag(top[1]) >= mag(top[2]) - 1e-9);
  CHECK(candidate_bohr_set(s, 2, 1.0).rank() == 2);
}
