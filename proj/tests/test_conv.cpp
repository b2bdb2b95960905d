#include <doctest.h>

#include <array>
#include <cmath>

#include "bohrlab/conv.hpp"
#include "bohrlab/error.hpp"
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

std::vector<std::int64_t> as_ints(const DensityFn& f) {
  std::vector<std::int64_t> out;
  for (const double v : f.values()) out.push_back(std::llround(v));
  return out;
}

}  // namespace

TEST_CASE("convolution examples") {
  const Modulus m7(7);
  const auto f = DensityFn::indicator(ZnSet(m7, {1, 2}));
  const auto ff = convolve(f, f);
  CHECK(as_ints(ff) == std::vector<std::int64_t>{0, 0, 1, 2, 1, 0, 0});
  CHECK(ff.integral());

  const auto delta = DensityFn::indicator(ZnSet(m7, {0}));
  const DensityFn g(m7, {0.5, -1.0, 2.0, 0.25, 0.0, 3.0, 1.0});
  CHECK(linf_dist(convolve(delta, g), g) < 1e-15);

  const ZnSet a(Modulus(1000), {1, 5, 77, 400, 999});
  const ZnSet t(Modulus(1000), {0, 3, 9, 500});
  CHECK(convolve(DensityFn::indicator(a), DensityFn::measure(t)).sum() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(DensityFn::measure(t).sum() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(linf_dist(g, g) == 0.0);
  CHECK(linf_dist(delta, DensityFn::zero(m7)) == 1.0);
  CHECK(error_name([&] { (void)convolve(f, DensityFn::zero(Modulus(8))); }) == "ModulusMismatch");
  CHECK(error_name([&] { (void)linf_dist(f, DensityFn::zero(Modulus(8))); }) == "ModulusMismatch");
  CHECK(error_name([] { (void)DensityFn::measure(ZnSet(Modulus(5))); }) == "EmptyBase");
}

TEST_CASE("fast and direct convolution agree against the oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = rng.uniform_int(1, 1500);
    const Modulus m(n);
    const ZnSet a = random_subset(m, rng.uniform_int(0, n), rng);
    const ZnSet b = random_subset(m, rng.uniform_int(0, n), rng);
    const auto fast = convolve(DensityFn::indicator(a), DensityFn::indicator(b));
    const auto direct = convolve_direct(DensityFn::indicator(a), DensityFn::indicator(b));
    const auto slow = oracle::cyclic_convolve(oracle::indicator(n, a.elements()), oracle::indicator(n, b.elements()));
    CHECK(as_ints(fast) == slow);
    CHECK(as_ints(direct) == slow);
    CHECK(convolve_counts(a, b) == slow);
  }
}

TEST_CASE("real-valued convolution through the transform") {
  Rng rng(12);
  const Modulus m(1031);
  std::vector<double> fv(1031), gv(1031), hv(1031);
  for (auto& v : fv) v = rng.uniform();
  for (auto& v : gv) v = rng.uniform() - 0.5;
  for (auto& v : hv) v = rng.uniform();
  const DensityFn f(m, fv), g(m, gv), h(m, hv);
  CHECK(linf_dist(convolve(f, g), convolve_direct(f, g)) < 1e-9);
  CHECK(linf_dist(convolve(f, g), convolve(g, f)) < 1e-9);
  CHECK(linf_dist(convolve(convolve(f, g), h), convolve(f, convolve(g, h))) < 1e-6);
  const ZnSet a = random_subset(m, 300, rng);
  const ZnSet t = random_subset(m, 40, rng);
  const auto am = convolve(DensityFn::indicator(a), DensityFn::measure(t));
  const auto ref = oracle::cyclic_convolve(oracle::indicator(1031, a.elements()), oracle::indicator(1031, t.elements()));
  double worst = 0.0;
  for (std::size_t x = 0; x < ref.size(); ++x) worst = std::max(worst, std::fabs(am.values()[x] - ref[x] / 40.0));
  CHECK(worst < 1e-9);
}

TEST_CASE("sumset") {
  const Modulus m(11);
  CHECK(sumset(ZnSet(m, {0, 1}), ZnSet(m, {0, 5})) == ZnSet(m, {0, 1, 5, 6}));
  CHECK(sumset(ZnSet(m), ZnSet(m, {1})).empty());
  CHECK(sumset(ZnSet(m, {10}), ZnSet(m, {2})) == ZnSet(m, {1}));
}

TEST_CASE("solution count examples") {
  const Modulus m11(11);
  CHECK(count_solutions(ZnSet(m11)) == SolutionCount{0, 0, 0});
  CHECK(count_solutions(ZnSet(m11, {5})) == SolutionCount{1, 1, 0});
  CHECK(count_solutions(ZnSet(m11, {1, 2, 3})) == SolutionCount{9, 3, 6});
  const auto brute = oracle::count_cyclic(11, {1, 2, 3});
  CHECK(brute.total == 9);
  CHECK(brute.nontrivial == 6);

  const std::vector<std::int64_t> one_two{1, 2};
  const std::vector<std::int64_t> one_two_three{1, 2, 3};
  CHECK(count_solutions_interval(one_two) == SolutionCount{2, 2, 0});
  CHECK(count_solutions_interval(one_two_three) == SolutionCount{9, 3, 6});
  CHECK(count_solutions_interval({}) == SolutionCount{0, 0, 0});

  CHECK(error_name([] { (void)count_solutions(ZnSet(Modulus(12), {1})); }) == "NonPrimeModulus");
  CHECK(error_name([] { (void)count_solutions(ZnSet(Modulus(9), {1})); }) == "NonPrimeModulus");
  CHECK(count_solutions(ZnSet(Modulus(3), {1})) == SolutionCount{1, 1, 0});
}

TEST_CASE("solution counts against quadruple brute force") {
  Rng rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    std::int64_t n;
    do n = rng.uniform_int(2, 200); while (n % 3 == 0 && n != 3);
    const Modulus m(n);
    const ZnSet a = random_subset(m, rng.uniform_int(0, std::min<std::int64_t>(n, 40)), rng);
    const auto got = count_solutions(a);
    const auto want = oracle::count_cyclic(n, a.elements());
    CHECK(got.total == want.total);
    CHECK(got.trivial == want.trivial);
    CHECK(got.nontrivial == want.nontrivial);
  }
}

TEST_CASE("interval counts") {
  Rng rng(14);
  for (int trial = 0; trial < 120; ++trial) {
    const auto top = rng.uniform_int(1, trial < 100 ? 300 : 3000);
    auto idx = random_indices(top, rng.uniform_int(0, std::min<std::int64_t>(top, 150)), rng);
    for (auto& v : idx) v += 1;
    const auto got = count_solutions_interval(idx);
    const auto want = oracle::count_integer(idx);
    CHECK(got.total == want.total);
    CHECK(got.nontrivial == want.nontrivial);
    const auto e = embed_interval(idx, top);
    CHECK(count_solutions(e.set) == got);
  }
}

TEST_CASE("translation and dilation invariance") {
  Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const Modulus m(1009);
    const ZnSet a = random_subset(m, rng.uniform_int(1, 200), rng);
    const auto base = count_solutions(a);
    CHECK(count_solutions(a.translate(rng.uniform_int(0, 1008))) == base);
    CHECK(count_solutions(dilate(a, rng.uniform_int(1, 1008)).set) == base);
  }
  const Modulus big(8191);
  const ZnSet a = random_subset(big, 3000, rng);
  CHECK(count_solutions(a) == count_solutions(a.translate(17)));
}

TEST_CASE("relative density") {
  const Modulus m(16);
  const ZnSet t(m, {0, 1, 2, 3});
  CHECK(relative_density(t, t) == 1.0);
  CHECK(relative_density(ZnSet(m, {7}), t) == 0.0);
  CHECK(relative_density(ZnSet(m, {0, 1}), t) == 0.5);
  CHECK(error_name([&] { (void)relative_density(t, ZnSet(m)); }) == "EmptyBase");
}

TEST_CASE("general convex coefficients") {
  const Modulus m(101);
  Rng rng(16);
  const ZnSet a = random_subset(m, 30, rng);
  const std::array<std::int64_t, 3> unit{1, 1, 1};
  CHECK(detail::count_convex_cyclic(a, unit, 3) == count_solutions(a).total);
  const std::array<std::int64_t, 3> mixed{1, 2, 3};
  std::int64_t brute = 0;
  for (const auto x : a.elements())
    for (const auto y : a.elements())
      for (const auto z : a.elements())
        for (const auto w : a.elements())
          if ((x + 2 * y + 3 * z - 6 * w) % 101 == 0) ++brute;
  CHECK(detail::count_convex_cyclic(a, mixed, 6) == brute);
}
