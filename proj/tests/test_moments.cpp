#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hgops/moments.hpp"

using namespace hgops;
using Catch::Approx;

namespace {

// Independent oracle: the implementation integrates with Gauss panels on a
// dyadic grid, so cross-check against plain high-resolution Simpson.
double simpson_oracle(const std::function<double(double)>& f, double a, double b, int n = 200001) {
  if (n % 2 == 0) ++n;
  const double h = (b - a) / (n - 1);
  double acc = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("polynomial moments are exact rational sums") {
  SECTION("monomial t^m") {
    for (const std::size_t m : {std::size_t{0}, std::size_t{3}, std::size_t{7}}) {
      const MomentSequence mu = moments(PowerSeries::monomial(m), 5);
      REQUIRE(mu.method == MomentMethod::closed_form);
      for (std::size_t k = 0; k <= 5; ++k) {
        CHECK(mu.at(k).real() == Approx(1.0 / static_cast<double>(k + m + 1)).epsilon(1e-15));
      }
    }
  }
  SECTION("constant one") {
    const MomentSequence mu = moments(PowerSeries({cplx(1, 0)}), 3);
    CHECK(mu.at(0).real() == Approx(1.0));
    CHECK(mu.at(1).real() == Approx(0.5));
    CHECK(mu.at(2).real() == Approx(1.0 / 3.0));
    CHECK(mu.at(3).real() == Approx(0.25));
  }
}

TEST_CASE("rational kernel moments: closed form and quadrature agree") {
  SECTION("k = 0 antiderivative check") {
    const MomentSequence mu = moments(FunctionSpec(RationalKernel{1.0, 0.5}), 3);
    REQUIRE(mu.method == MomentMethod::closed_form);
    CHECK(mu.at(0).real() == Approx(2.0).epsilon(1e-13));
  }
  SECTION("oracle equivalence across poles (a <= 0.99)") {
    for (const double a : {0.1, 0.5, 0.9, 0.99}) {
      const MomentSequence mu = moments(FunctionSpec(RationalKernel{1.0, a}), 32);
      for (const std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{32}}) {
        const double want = simpson_oracle(
            [&](double t) { return std::pow(t, static_cast<double>(k)) / ((1 - a * t) * (1 - a * t)); },
            0.0, 1.0);
        INFO("a = " << a << " k = " << k);
        CHECK(mu.at(k).real() == Approx(want).margin(1e-9));
      }
    }
  }
  SECTION("nonnegative and nonincreasing for nonnegative integrands") {
    const MomentSequence mu = moments(FunctionSpec(RationalKernel{2.0, 0.9}), 64);
    for (std::size_t k = 0; k < 64; ++k) {
      CHECK(mu.at(k).real() >= mu.at(k + 1).real());
      CHECK(mu.at(k + 1).real() > 0.0);
    }
    CHECK(mu.at(64).real() < mu.at(0).real());
  }
}

TEST_CASE("log kernel moments match the harmonic-number closed form") {
  // int_0^1 t^k log(1/(1-t)) dt = H_{k+1}/(k+1); the engine uses quadrature
  // for this spec, so the identity is an independent oracle.
  const MomentSequence mu = moments(FunctionSpec(LogKernel{}), 20);
  REQUIRE(mu.method == MomentMethod::quadrature);
  double H = 0.0;
  for (std::size_t k = 0; k <= 20; ++k) {
    H += 1.0 / static_cast<double>(k + 1);
    CHECK(mu.at(k).real() == Approx(H / static_cast<double>(k + 1)).margin(2e-11));
  }
}

TEST_CASE("cauchy transform moments go through quadrature") {
  CauchyTransform ct;
  ct.nodes.push_back({cplx(1.0, 0.0), std::polar(1.0, 2.0)});
  const MomentSequence mu = moments(FunctionSpec(ct), 8);
  REQUIRE(mu.method == MomentMethod::quadrature);
  const cplx zbar = std::conj(std::polar(1.0, 2.0));
  for (const std::size_t k : {std::size_t{0}, std::size_t{4}}) {
    const double re = simpson_oracle(
        [&](double t) { return (std::pow(t, (double)k) / (1.0 - zbar * t)).real(); }, 0.0, 1.0);
    const double im = simpson_oracle(
        [&](double t) { return (std::pow(t, (double)k) / (1.0 - zbar * t)).imag(); }, 0.0, 1.0);
    CHECK(std::abs(mu.at(k) - cplx(re, im)) < 1e-9);
  }

  CauchyTransform at_one;
  at_one.nodes.push_back({cplx(1.0, 0.0), cplx(1.0, 0.0)});
  CHECK_THROWS_AS(moments(FunctionSpec(at_one), 2), domain_error);
}

TEST_CASE("abs moments") {
  SECTION("sign is irrelevant") {
    const MomentSequence plus = abs_moments(PowerSeries({cplx(1, 0)}), 6);
    const MomentSequence minus = abs_moments(PowerSeries({cplx(-1, 0)}), 6);
    for (std::size_t j = 0; j <= 6; ++j) {
      CHECK(plus.at(j).real() == Approx(1.0 / static_cast<double>(j + 1)).margin(1e-10));
      CHECK(minus.at(j).real() == Approx(plus.at(j).real()).margin(1e-12));
    }
  }
  SECTION("kink at the interior zero of t - 1/2") {
    const PowerSeries f({cplx(-0.5, 0), cplx(1, 0)});
    const MomentSequence mu = abs_moments(f, 4);
    CHECK(mu.at(0).real() == Approx(0.25).margin(1e-11));  // int_0^1 |t - 1/2| dt
    const double want1 = simpson_oracle([](double t) { return t * std::abs(t - 0.5); }, 0.0, 1.0);
    CHECK(mu.at(1).real() == Approx(want1).margin(1e-9));
  }
  SECTION("monotone nonincreasing output") {
    TrialRng rng(77, 0);
    std::vector<cplx> c(40);
    for (auto& x : c) x = rng.complex_gaussian();
    const MomentSequence mu = abs_moments(PowerSeries(std::move(c)), 30);
    for (std::size_t j = 0; j < 30; ++j) {
      CHECK(mu.at(j).real() >= mu.at(j + 1).real() - 1e-12);
    }
  }
}

TEST_CASE("moment error bounds are recorded") {
  const MomentSequence cf = moments(FunctionSpec(RationalKernel{1.0, 0.5}), 8);
  REQUIRE(cf.abs_error.size() == 9);
  for (const double e : cf.abs_error) CHECK(e < 1e-10);
  const MomentSequence q = moments(FunctionSpec(LogKernel{}), 8);
  for (const double e : q.abs_error) CHECK(e < 1e-10);
}
