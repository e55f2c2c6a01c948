#include <doctest.h>

#include <random>

#include "expfun/error.hpp"
#include "expfun/fundamental.hpp"
#include "oracles.hpp"

using namespace expfun;
using namespace std::complex_literals;

TEST_CASE("all-zero frequencies give x^n / n!") {
  for (int n = 0; n <= 6; ++n) {
    const FundamentalEvaluator e(FrequencyVector(std::vector<Complex>(n + 1, 0.0)));
    for (double x : {-1.5, 0.3, 2.0}) {
      CHECK(e.derivative(0, x) ==
            doctest::Approx(std::pow(x, n) / oracle::factorial(n)).epsilon(1e-13));
    }
  }
  const FundamentalEvaluator e3(FrequencyVector::from_real({0.0, 0.0, 0.0}));
  CHECK(e3.derivative(0, 3.0) == doctest::Approx(4.5).epsilon(1e-14));
  CHECK(e3.derivative(1, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e3.basis(2, 1.5) == doctest::Approx(2.25).epsilon(1e-14));
}

TEST_CASE("worked example (-1, -2)") {
  const FundamentalEvaluator e(FrequencyVector::from_real({-1.0, -2.0}));
  for (int m = 0; m <= 4; ++m) {
    for (double x : {-1.0, 0.0, 0.5, 1.0, 3.0}) {
      CHECK(std::abs(e.derivative(m, x) - oracle::example5_phi(m, x)) <=
            1e-13 * (1.0 + std::abs(oracle::example5_phi(m, x))));
    }
  }
  // Phi'' = e^{-x} - 4 e^{-2x} vanishes at 2 ln 2.
  CHECK(std::abs(e.derivative(2, 2.0 * std::log(2.0))) < 1e-15);
  // n = 1: b_0 = Phi', b_1 = 1! Phi.
  CHECK(e.basis(0, 1.0) ==
        doctest::Approx(-0.097208874698216937808).epsilon(1e-13));
  CHECK(e.basis(1, 1.0) == doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("worked example (-1, 1, 0, 1)") {
  const FundamentalEvaluator e(FrequencyVector::from_real({-1.0, 1.0, 0.0, 1.0}));
  for (int m = 0; m <= 5; ++m) {
    for (double x : {-1.0, -0.6, 0.2, 1.0, 4.0}) {
      const double want = oracle::example9_phi(m, x);
      CHECK(std::abs(e.derivative(m, x) - want) <= 1e-12 * (1.0 + std::abs(want)));
    }
  }
  CHECK(e.derivative(0, 1.0) == doctest::Approx(0.228459682592378).epsilon(1e-13));
}

TEST_CASE("(0, 1, -1) gives cosh x - 1") {
  const FundamentalEvaluator e(FrequencyVector::from_real({0.0, 1.0, -1.0}));
  CHECK(e.derivative(0, 1.0) == doctest::Approx(0.54308063481524377848).epsilon(1e-14));
  CHECK(std::abs(eval_via_partial_fractions(e.frequencies(), 2, 1.0) - std::cosh(1.0)) < 1e-14);
  const auto series = eval_via_taylor(e.frequencies(), 0, 0.1);
  CHECK(std::abs(series.value - 0.0050041680558035989880) < 1e-17);
  CHECK(series.tail_bound < 1e-12);
}

TEST_CASE("partial fractions oracle") {
  const auto ex5 = FrequencyVector::from_real({-1.0, -2.0});
  CHECK(std::abs(eval_via_partial_fractions(ex5, 0, 1.0) -
                 (std::exp(-1.0) - std::exp(-2.0))) < 1e-15);
  const auto f01 = FrequencyVector::from_real({0.0, 1.0});
  for (double x : {-2.0, 0.5, 3.0}) {
    CHECK(std::abs(eval_via_partial_fractions(f01, 0, x) - (std::exp(x) - 1.0)) < 1e-14);
  }
  CHECK_THROWS_AS(eval_via_partial_fractions(FrequencyVector::from_real({1.0, 1.0 + 1e-9}), 0, 1.0),
                  NumericalError);
}

TEST_CASE("Taylor series oracle") {
  const auto ex5 = FrequencyVector::from_real({-1.0, -2.0});
  CHECK(eval_via_taylor(ex5, 2, 0.0).value == Complex(-3.0));
  CHECK(std::abs(eval_via_taylor(FrequencyVector::from_real({0.0, 0.0}), 0, 0.5).value - 0.5) <
        1e-16);
  // Too few terms for a large argument: the tail bound refuses the result.
  CHECK_THROWS_AS(eval_via_taylor(FrequencyVector::from_real({3.0, -3.0}), 0, 5.0, 10),
                  NumericalError);
  CHECK_THROWS_AS(eval_via_taylor(ex5, 0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("Cauchy data at zero for random conjugate-closed frequencies") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 9;
    const FundamentalEvaluator e(FrequencyVector(oracle::random_conjugate_closed(rng, n + 1, 3.0)));
    REQUIRE(e.realify());
    const auto d = e.derivatives(n, 0.0);
    for (int j = 0; j <= n; ++j) CHECK(std::abs(d[j] - (j == n ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("three evaluation routes agree on distinct real frequencies") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = trial % 7;
    const auto f = FrequencyVector::from_real(oracle::random_distinct(rng, n + 1, -2.0, 2.0, 0.1));
    const FundamentalEvaluator e(f);
    for (int probe = 0; probe < 4; ++probe) {
      const double x = ux(rng);
      for (int m = 0; m <= n + 3; ++m) {
        const double got = e.derivative(m, x);
        const double pf = eval_via_partial_fractions(f, m, x).real();
        CHECK(std::abs(got - pf) <= 1e-9 * (1.0 + std::abs(pf)));
        if (std::abs(x) <= 0.5) {
          const double ts = eval_via_taylor(f, m, x).value.real();
          CHECK(std::abs(got - ts) <= 1e-9 * (1.0 + std::abs(ts)));
        }
      }
    }
  }
}

TEST_CASE("confluent frequencies need no special case") {
  // (a, a): Phi = x e^{ax}
  const FundamentalEvaluator e(FrequencyVector::from_real({0.7, 0.7}));
  for (double x : {-1.0, 0.4, 2.5}) {
    CHECK(e.derivative(0, x) == doctest::Approx(x * std::exp(0.7 * x)).epsilon(1e-13));
    CHECK(e.derivative(1, x) ==
          doctest::Approx((1.0 + 0.7 * x) * std::exp(0.7 * x)).epsilon(1e-13));
  }
  // Nearly confluent nodes match the confluent limit smoothly.
  const FundamentalEvaluator near(FrequencyVector::from_real({0.7, 0.7 + 1e-9}));
  CHECK(near.derivative(0, 1.0) == doctest::Approx(std::exp(0.7)).epsilon(1e-8));
}

TEST_CASE("finite differences match the next derivative") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 5;
    const FundamentalEvaluator e(FrequencyVector(oracle::random_conjugate_closed(rng, n + 1, 1.5)));
    const double x = ux(rng);
    for (int m = 0; m <= n + 1; ++m) {
      const double fd = (e.derivative(m, x + h) - e.derivative(m, x - h)) / (2.0 * h);
      CHECK(std::abs(fd - e.derivative(m + 1, x)) <= 1e-6);
    }
  }
}

TEST_CASE("Phi solves the differential equation") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 7;
    const auto lam = oracle::random_conjugate_closed(rng, n + 1, 1.5);
    const FundamentalEvaluator e{FrequencyVector(lam)};
    // prod_j (D - lambda_j) = sum_j (-1)^j e_j D^{n+1-j}
    const auto el = elementary_symmetric(lam);
    for (int probe = 0; probe < 3; ++probe) {
      const double x = ux(rng);
      const auto d = e.derivatives_complex(n + 1, x);
      Complex residual = 0.0;
      for (int j = 0; j <= n + 1; ++j) residual += (j % 2 ? -1.0 : 1.0) * el[j] * d[n + 1 - j];
      CHECK(std::abs(residual) <= 1e-8);
    }
  }
}

TEST_CASE("real frequencies give Phi > 0 on (0, 3]") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 7;
    std::vector<double> lam(n + 1);
    for (auto& v : lam) v = u(rng);
    const FundamentalEvaluator e(FrequencyVector::from_real(lam));
    for (int i = 1; i <= 60; ++i) CHECK(e.derivative(0, 3.0 * i / 60) > 0.0);
  }
}

TEST_CASE("non-real fundamental functions") {
  const FundamentalEvaluator e(FrequencyVector{1i, 0.0});
  CHECK_FALSE(e.realify());
  CHECK_THROWS_AS(e.derivative(0, 1.0), std::logic_error);
  // Phi = (e^{ix} - 1) / i
  const Complex v = e.derivative_complex(0, 1.0);
  const Complex want = (std::exp(1i) - 1.0) / 1i;
  CHECK(std::abs(v - want) < 1e-14);
  // Conjugate pair: Phi = sin x, real after projection.
  const FundamentalEvaluator s(FrequencyVector{1i, -1i});
  CHECK(s.derivative(0, 0.7) == doctest::Approx(std::sin(0.7)).epsilon(1e-14));
}

TEST_CASE("argument validation") {
  const FundamentalEvaluator e(FrequencyVector::from_real({1.0, 2.0}));
  CHECK_THROWS_AS(e.basis(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(e.basis(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(e.derivative(-1, 0.0), std::invalid_argument);
  CHECK(e.basis(0, 0.0) == doctest::Approx(1.0));
  const FundamentalEvaluator big(FrequencyVector::from_real({1e17, 0.0}));
  CHECK_THROWS_AS(big.derivative(0, 1e3), NumericalError);
}
