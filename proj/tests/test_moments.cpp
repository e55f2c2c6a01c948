#include <doctest.h>

#include <random>

#include "expfun/error.hpp"
#include "expfun/moments.hpp"
#include "expfun/quadrature.hpp"
#include "oracles.hpp"

using namespace expfun;

namespace {

FundamentalEvaluator make(std::initializer_list<double> lam) {
  return FundamentalEvaluator(FrequencyVector::from_real(lam));
}

MomentSequence plain(std::vector<double> values, double length) {
  MomentSequence s;
  s.values = std::move(values);
  s.support_length = length;
  return s;
}

void check_moment_match(const Measure& nu, const MomentSequence& s, double tol) {
  const auto res = moment_residuals(nu, s);
  for (std::size_t k = 0; k < res.size(); ++k) {
    CHECK(res[k] <= tol * (1.0 + std::abs(s.values[k])));
  }
  for (const auto& atom : nu.atoms()) {
    CHECK(atom.location >= s.origin - 1e-8);
    CHECK(atom.location <= s.origin + s.support_length + 1e-8);
    CHECK(atom.weight >= 0.0);
  }
}

}  // namespace

TEST_CASE("measure validation") {
  CHECK_NOTHROW(Measure::atomic(0.0, 1.0, {{0.5, 1.0}}));
  CHECK_THROWS_AS(Measure::atomic(0.0, 1.0, {{0.5, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Measure::atomic(0.0, 1.0, {{1.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Measure::atomic(1.0, 0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Measure::with_density(1.0, 1.0, [](double) { return 1.0; }),
                  std::invalid_argument);
  const auto mu = Measure::atomic(0.0, 2.0, {{1.0, 0.5}});
  CHECK(mu.kind() == Measure::Kind::atoms);
  CHECK(mu.length() == 2.0);
}

TEST_CASE("transform of a unit atom at the left end") {
  const auto e = make({0.3, -1.0, 2.0, 0.0});
  const auto s = transform(e, Measure::atomic(-0.5, 1.0, {{-0.5, 1.0}}), 256);
  REQUIRE(s.order() == 3);
  CHECK(s.values[0] == doctest::Approx(1.0));
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(s.values[k]) < 1e-15);
  CHECK(s.origin == -0.5);
  CHECK(s.support_length == 1.5);
}

TEST_CASE("transform reduces to ordinary moments for the zero vector") {
  const auto e = make({0.0, 0.0, 0.0, 0.0});
  const auto mu = Measure::atomic(1.0, 3.0, {{1.5, 0.25}, {2.0, 1.0}, {3.0, 0.5}});
  const auto s = transform(e, mu, 256);
  const auto ord = ordinary_moments(mu, 1.0, 4);
  for (int k = 0; k <= 3; ++k) CHECK(s.values[k] == doctest::Approx(ord[k]).epsilon(1e-13));

  const auto uniform = Measure::with_density(0.0, 1.0, [](double) { return 1.0; }, "uniform");
  const auto su = transform(e, uniform, 256);
  for (int k = 0; k <= 3; ++k) CHECK(su.values[k] == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  CHECK(su.quadrature_order >= 64);
}

TEST_CASE("transform of an atom for (0, 1, -1)") {
  const auto s = transform(make({0.0, 1.0, -1.0}), Measure::atomic(0.0, 1.0, {{1.0, 1.0}}), 256);
  CHECK(s.hypothesis_certified);
  CHECK(s.values[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
  CHECK(s.values[1] == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
  CHECK(s.values[2] == doctest::Approx(2.0 * std::cosh(1.0) - 2.0).epsilon(1e-13));
}

TEST_CASE("transform of the uniform density for (0, 1, -1)") {
  const auto s = transform(make({0.0, 1.0, -1.0}),
                           Measure::with_density(0.0, 1.0, [](double) { return 1.0; }), 256);
  CHECK(s.values[0] == doctest::Approx(1.1752011936438015).epsilon(1e-13));
  CHECK(s.values[1] == doctest::Approx(0.54308063481524378).epsilon(1e-13));
  CHECK(s.values[2] == doctest::Approx(0.35040238728760291).epsilon(1e-13));
}

TEST_CASE("transform records an uncertified hypothesis and rejects bad densities") {
  const auto e = make({-1.0, -2.0});
  const auto s = transform(e, Measure::atomic(0.0, 1.0, {{0.5, 1.0}}), 256);
  CHECK_FALSE(s.hypothesis_certified);
  CHECK_THROWS_AS(
      transform(e, Measure::with_density(0.0, 1.0, [](double x) { return x - 0.5; }), 256),
      std::invalid_argument);
  SignReport short_scan = verify_sign(make({0.0, 1.0, -1.0}), 3, 0.0, 0.5, 64);
  const auto partial =
      transform(make({0.0, 1.0, -1.0}), Measure::atomic(0.0, 1.0, {{1.0, 1.0}}), short_scan);
  CHECK_FALSE(partial.hypothesis_certified);
}

TEST_CASE("transform is linear in the measure") {
  const auto e = make({0.7, -0.7, 1.4, -1.4, 0.0});
  const std::vector<Atom> first{{0.2, 0.3}, {1.1, 0.9}};
  const std::vector<Atom> second{{0.6, 1.7}, {2.0, 0.1}};
  std::vector<Atom> both = first;
  both.insert(both.end(), second.begin(), second.end());
  const auto s1 = transform(e, Measure::atomic(0.0, 2.0, first), 128);
  const auto s2 = transform(e, Measure::atomic(0.0, 2.0, second), 128);
  const auto s12 = transform(e, Measure::atomic(0.0, 2.0, both), 128);
  std::vector<Atom> scaled = first;
  for (auto& a : scaled) a.weight *= 3.5;
  const auto s3 = transform(e, Measure::atomic(0.0, 2.0, scaled), 128);
  for (int k = 0; k <= 4; ++k) {
    CHECK(s12.values[k] == doctest::Approx(s1.values[k] + s2.values[k]).epsilon(1e-12));
    CHECK(s3.values[k] == doctest::Approx(3.5 * s1.values[k]).epsilon(1e-12));
  }
}

TEST_CASE("Riesz functional") {
  const auto e = make({0.0, 1.0, -1.0});
  const auto atom = transform(e, Measure::atomic(0.0, 1.0, {{0.0, 1.0}}), 128);
  CHECK(riesz_functional(atom, PolynomialCoeffs{{1.0, 1.0, 1.0}}) == doctest::Approx(1.0));
  CHECK(riesz_functional(atom, PolynomialCoeffs{{1.0}}) == doctest::Approx(atom.values[0]));
  CHECK_THROWS_AS(riesz_functional(atom, PolynomialCoeffs{{1.0, 0.0, 0.0, 1.0}}),
                  std::invalid_argument);

  // Against direct integration of sum a_k b_k(x - a) over a density.
  const auto density = [](double x) { return 1.0 + x * x; };
  const auto mu = Measure::with_density(0.5, 2.0, density);
  const auto s = transform(e, mu, 128);
  const PolynomialCoeffs r{{0.2, -1.0, 1.5}};
  const double direct =
      quadrature::integrate(
          [&](double x) {
            double sum = 0.0;
            for (int k = 0; k <= 2; ++k) sum += r.coeffs[k] * e.basis(k, x - 0.5);
            return sum * density(x);
          },
          0.5, 2.0)
          .value;
  CHECK(std::abs(riesz_functional(s, r) - direct) < 1e-9);
  CHECK(riesz_functional(s, r) >= 0.0);
}

TEST_CASE("Hausdorff check examples") {
  CHECK(hausdorff_check(plain({1.0, 0.0, 0.0, 0.0, 0.0}, 1.0)).pass);
  const auto uniform = hausdorff_check(plain({1.0, 0.5, 1.0 / 3, 0.25, 0.2}, 1.0));
  CHECK(uniform.pass);
  REQUIRE(uniform.conditions.size() == 2);
  CHECK(uniform.conditions[0].name == "hankel");
  CHECK(uniform.conditions[0].matrix.rows() == 3);
  CHECK(uniform.conditions[1].name == "localized");
  CHECK(uniform.conditions[1].matrix.rows() == 2);
  for (const auto& c : uniform.conditions) CHECK(c.min_eigenvalue > 0.0);

  const auto bad = hausdorff_check(plain({1.0, 2.0, 0.0, 0.0, 0.0}, 1.0));
  CHECK_FALSE(bad.pass);

  const auto odd = hausdorff_check(plain({1.0, 0.5, 1.0 / 3, 0.25}, 1.0));
  CHECK(odd.pass);
  CHECK(odd.conditions[0].name == "shifted");
  CHECK_FALSE(hausdorff_check(plain({1.0, 2.0}, 1.0)).pass);
  CHECK(hausdorff_check(plain({1.0, 1.0}, 1.0)).pass);
  CHECK_FALSE(hausdorff_check(plain({-1.0}, 1.0)).pass);
}

TEST_CASE("Gauss rule from Legendre moments") {
  // Moments of the uniform weight on [0, 1].
  const int nodes = 6;
  std::vector<double> mom(2 * nodes);
  for (int k = 0; k < 2 * nodes; ++k) mom[k] = 1.0 / (k + 1);
  const auto rule = gauss_rule_from_moments(mom, nodes, 1e-14);
  REQUIRE(rule.nodes.size() == static_cast<std::size_t>(nodes));
  const auto ref = quadrature::gauss_legendre(nodes, 0.0, 1.0);
  for (int i = 0; i < nodes; ++i) {
    CHECK(rule.nodes[i] == doctest::Approx(ref.nodes[i]).epsilon(1e-8));
    CHECK(rule.weights[i] == doctest::Approx(ref.weights[i]).epsilon(1e-8));
  }
}

TEST_CASE("recover_measure examples") {
  SUBCASE("atom at the origin") {
    auto s = plain({1.0, 0.0, 0.0}, 1.0);
    s.origin = 2.0;
    const auto nu = recover_measure(s);
    REQUIRE(nu.atoms().size() == 1);
    CHECK(nu.atoms()[0].location == doctest::Approx(2.0));
    CHECK(nu.atoms()[0].weight == doctest::Approx(1.0));
  }
  SUBCASE("uniform moments, n = 4") {
    const auto s = plain({1.0, 0.5, 1.0 / 3, 0.25, 0.2}, 1.0);
    const auto nu = recover_measure(s);
    CHECK(nu.atoms().size() == 3);
    check_moment_match(nu, s, 1e-8);
  }
  SUBCASE("uniform moments, n = 3") {
    const auto s = plain({1.0, 0.5, 1.0 / 3, 0.25}, 1.0);
    const auto nu = recover_measure(s);
    CHECK(nu.atoms().size() == 2);
    check_moment_match(nu, s, 1e-8);
  }
  SUBCASE("(0, 1, -1) with an atom at 1") {
    const auto s =
        transform(make({0.0, 1.0, -1.0}), Measure::atomic(0.0, 1.0, {{1.0, 1.0}}), 256);
    REQUIRE(hausdorff_check(s).pass);
    const auto nu = recover_measure(s);
    check_moment_match(nu, s, 1e-8);
  }
  SUBCASE("failing sequences are rejected") {
    CHECK_THROWS_AS(recover_measure(plain({1.0, 2.0, 0.0, 0.0, 0.0}, 1.0)), NumericalError);
  }
}

TEST_CASE("end-to-end recovery for symmetric frequencies") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> loc(0.0, 1.0);
  std::uniform_real_distribution<double> wt(0.1, 2.0);
  std::uniform_real_distribution<double> left(-1.0, 1.0);
  std::uniform_real_distribution<double> len(0.5, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const FundamentalEvaluator e(FrequencyVector::from_real(oracle::random_symmetric(rng, n + 1, 1.5)));
    const double a = left(rng);
    const double b = a + len(rng);
    std::vector<Atom> atoms;
    const int count = 1 + trial % 5;
    for (int i = 0; i < count; ++i) atoms.push_back({a + (b - a) * loc(rng), wt(rng)});
    const auto s = transform(e, Measure::atomic(a, b, atoms), 256);
    CHECK(s.hypothesis_certified);
    CHECK(hausdorff_check(s).pass);
    const auto nu = recover_measure(s);
    check_moment_match(nu, s, 1e-8);
  }
}

TEST_CASE("negative control: a failing transformed sequence exists for (-1, -2)") {
  const auto hit = search_hausdorff_counterexample(make({-1.0, -2.0}), 0.0, 1.5);
  REQUIRE(hit);
  CHECK(hit->location > 0.0);
  CHECK(hit->location <= 1.5);
  CHECK_FALSE(hit->report.pass);
  CHECK_FALSE(hausdorff_check(hit->sequence).pass);
  CHECK_FALSE(search_hausdorff_counterexample(make({0.0, 1.0, -1.0}), 0.0, 1.5, 64));
}
