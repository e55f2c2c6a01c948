#include "expfun/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expfun/error.hpp"
#include "expfun/linalg.hpp"
#include "expfun/quadrature.hpp"

namespace expfun {

namespace {

constexpr double kSupportSlack = 1e-8;

bool covers(const SignReport& cert, int order, double length) {
  return cert.status == SignStatus::nonnegative && cert.order == order &&
         cert.lo <= 0.0 && cert.hi >= length;
}

std::vector<double> integrate_atoms(const FundamentalEvaluator& e, const Measure& mu) {
  std::vector<double> s(static_cast<std::size_t>(e.order()) + 1, 0.0);
  for (const auto& atom : mu.atoms()) {
    const auto b = e.basis_all(atom.location - mu.lo());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += atom.weight * b[k];
  }
  return s;
}

std::vector<double> integrate_density(const FundamentalEvaluator& e,
                                      const Measure& mu, int order) {
  const auto rule = quadrature::gauss_legendre(order, mu.lo(), mu.hi());
  std::vector<double> s(static_cast<std::size_t>(e.order()) + 1, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double rho = mu.density()(x);
    if (!(rho >= 0.0)) {
      throw std::invalid_argument("density '" + mu.name() + "' is negative or NaN inside its support");
    }
    const auto b = e.basis_all(x - mu.lo());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += rule.weights[i] * rho * b[k];
  }
  return s;
}

MomentSequence transform_impl(const FundamentalEvaluator& e, const Measure& mu,
                              bool certified) {
  if (!e.realify()) {
    throw std::invalid_argument("moment transform needs a real-valued fundamental function");
  }
  MomentSequence out;
  out.origin = mu.lo();
  out.support_length = mu.length();
  out.hypothesis_certified = certified;
  if (mu.kind() == Measure::Kind::atoms) {
    out.values = integrate_atoms(e, mu);
    return out;
  }
  int order = 64;
  auto prev = integrate_density(e, mu, order);
  for (;;) {
    const int next_order = 2 * order;
    if (next_order > 4096) {
      throw NumericalError("density quadrature did not stabilise by order 4096");
    }
    auto next = integrate_density(e, mu, next_order);
    bool agree = true;
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (std::abs(next[k] - prev[k]) > 1e-11 * (1.0 + std::abs(next[k]))) agree = false;
    }
    order = next_order;
    prev = std::move(next);
    if (agree) break;
  }
  out.values = std::move(prev);
  out.quadrature_order = order;
  return out;
}

}  // namespace

Measure Measure::atomic(double a, double b, std::vector<Atom> atoms) {
  if (!(a <= b)) throw std::invalid_argument("measure support needs a <= b");
  const double slack = kSupportSlack * std::max(1.0, b - a);
  for (const auto& atom : atoms) {
    if (!(atom.weight >= 0.0)) throw std::invalid_argument("atom weights must be >= 0");
    if (!(atom.location >= a - slack && atom.location <= b + slack)) {
      throw std::invalid_argument("atom location outside the support");
    }
  }
  Measure m;
  m.kind_ = Kind::atoms;
  m.lo_ = a;
  m.hi_ = b;
  m.atoms_ = std::move(atoms);
  m.name_ = "atoms";
  return m;
}

Measure Measure::with_density(double a, double b, Density density, std::string name) {
  if (!(a < b)) throw std::invalid_argument("density support needs a < b");
  if (!density) throw std::invalid_argument("density callable is empty");
  Measure m;
  m.kind_ = Kind::density;
  m.lo_ = a;
  m.hi_ = b;
  m.density_ = std::move(density);
  m.name_ = std::move(name);
  return m;
}

MomentSequence transform(const FundamentalEvaluator& e, const Measure& mu, int grid) {
  bool certified = true;
  if (mu.length() > 0.0) {
    const auto cert = verify_sign(e, e.order() + 1, 0.0, mu.length(), grid);
    certified = covers(cert, e.order() + 1, mu.length());
  }
  return transform_impl(e, mu, certified);
}

MomentSequence transform(const FundamentalEvaluator& e, const Measure& mu,
                         const SignReport& certificate) {
  return transform_impl(e, mu, covers(certificate, e.order() + 1, mu.length()));
}

double riesz_functional(const MomentSequence& s, const PolynomialCoeffs& r) {
  if (r.degree() > s.order()) {
    throw std::invalid_argument("polynomial degree exceeds the sequence order");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < r.coeffs.size() && k < s.values.size(); ++k) {
    total += r.coeffs[k] * s.values[k];
  }
  return total;
}

HausdorffReport hausdorff_check(const MomentSequence& s, double tol) {
  const int n = s.order();
  if (n < 0) throw std::invalid_argument("empty moment sequence");
  const double b = s.support_length;
  const auto& v = s.values;

  const auto build = [](int dim, const auto& entry) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = entry(i + j);
    }
    return m;
  };

  HausdorffReport report;
  const auto add = [&](std::string name, Eigen::MatrixXd m) {
    HankelCondition c;
    c.name = std::move(name);
    c.min_eigenvalue = linalg::min_eigenvalue(m);
    c.threshold = -tol * linalg::spectral_norm_symmetric(m);
    c.passed = c.min_eigenvalue >= c.threshold;
    c.matrix = std::move(m);
    report.pass = report.pass && c.passed;
    report.conditions.push_back(std::move(c));
  };

  const int m = n / 2;
  if (n % 2 == 0) {
    add("hankel", build(m + 1, [&](int i) { return v[i]; }));
    if (m >= 1) {
      add("localized", build(m, [&](int i) { return b * v[i + 1] - v[i + 2]; }));
    }
  } else {
    add("shifted", build(m + 1, [&](int i) { return v[i + 1]; }));
    add("localized", build(m + 1, [&](int i) { return b * v[i] - v[i + 1]; }));
  }
  return report;
}

GaussRule gauss_rule_from_moments(const std::vector<double>& moments, int nodes,
                                  double tol) {
  if (nodes < 0 || static_cast<int>(moments.size()) < 2 * nodes) {
    throw std::invalid_argument("a Gauss rule with N nodes needs 2N moments");
  }
  GaussRule rule;
  if (nodes == 0 || !(moments[0] > 0.0)) return rule;

  Eigen::MatrixXd h(nodes, nodes);
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) h(i, j) = moments[i + j];
  }
  const double scale = h.diagonal().cwiseAbs().maxCoeff();
  const auto chol = linalg::cholesky(h, tol * scale);
  const int count = static_cast<int>(chol.rank);
  if (count == 0) return rule;

  // Upper factor R = L^T plus its extra column R(i, count) from mu_{i+count}.
  const Eigen::MatrixXd r = chol.lower.topLeftCorner(count, count).transpose();
  Eigen::VectorXd extra(count);
  for (int i = 0; i < count; ++i) {
    double v = moments[i + count];
    for (int k = 0; k < i; ++k) v -= r(k, i) * extra(k);
    extra(i) = v / r(i, i);
  }
  const auto upper = [&](int i, int j) { return j == count ? extra(i) : r(i, j); };

  Eigen::VectorXd diag(count);
  Eigen::VectorXd sub(std::max(count - 1, 0));
  for (int j = 0; j < count; ++j) {
    diag(j) = upper(j, j + 1) / upper(j, j);
    if (j > 0) diag(j) -= upper(j - 1, j) / upper(j - 1, j - 1);
    if (j + 1 < count) sub(j) = upper(j + 1, j + 1) / upper(j, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Jacobi matrix eigendecomposition failed");
  }
  for (int i = 0; i < count; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes.push_back(es.eigenvalues()(i));
    rule.weights.push_back(moments[0] * v0 * v0);
  }
  return rule;
}

Measure recover_measure(const MomentSequence& s, double tol) {
  const auto report = hausdorff_check(s, tol);
  if (!report.pass) {
    throw NumericalError("sequence fails the truncated Hausdorff conditions");
  }
  const int n = s.order();
  const double len = s.support_length;
  std::vector<Atom> atoms;
  if (n % 2 == 1) {
    const auto rule = gauss_rule_from_moments(s.values, (n + 1) / 2, tol);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      atoms.push_back({rule.nodes[i], rule.weights[i]});
    }
  } else {
    // t dnu(t) has moments s_1..s_n; its Gauss rule fixes the interior
    // atoms, and the left endpoint takes the remaining mass.
    const std::vector<double> shifted(s.values.begin() + 1, s.values.end());
    const auto rule = gauss_rule_from_moments(shifted, n / 2, tol);
    double interior = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = rule.nodes[i];
      if (!(t > 0.0)) throw NumericalError("recovered interior atom is not positive");
      atoms.push_back({t, rule.weights[i] / t});
      interior += rule.weights[i] / t;
    }
    const double endpoint = s.values[0] - interior;
    const double mass_tol = 1e-8 * (1.0 + std::abs(s.values[0]));
    if (endpoint < -mass_tol) {
      throw NumericalError("recovered endpoint weight is negative");
    }
    if (endpoint > mass_tol) atoms.insert(atoms.begin(), Atom{0.0, endpoint});
  }
  for (auto& atom : atoms) {
    if (atom.location < -kSupportSlack || atom.location > len + kSupportSlack) {
      throw NumericalError("recovered atom lies outside the support interval");
    }
    atom.location += s.origin;
    atom.weight = std::max(atom.weight, 0.0);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  return Measure::atomic(s.origin, s.origin + len, std::move(atoms));
}

std::vector<double> ordinary_moments(const Measure& nu, double origin, int count) {
  if (nu.kind() != Measure::Kind::atoms) {
    throw std::invalid_argument("ordinary_moments needs an atomic measure");
  }
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  for (const auto& atom : nu.atoms()) {
    double p = 1.0;
    for (auto& m : out) {
      m += atom.weight * p;
      p *= atom.location - origin;
    }
  }
  return out;
}

std::vector<double> moment_residuals(const Measure& nu, const MomentSequence& s) {
  const auto m = ordinary_moments(nu, s.origin, static_cast<int>(s.values.size()));
  std::vector<double> out(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) out[k] = std::abs(m[k] - s.values[k]);
  return out;
}

std::optional<HausdorffCounterexample> search_hausdorff_counterexample(
    const FundamentalEvaluator& e, double a, double b, int grid, double tol) {
  if (!(a < b) || grid < 1) throw std::invalid_argument("search needs a < b and grid >= 1");
  for (int i = 0; i <= grid; ++i) {
    const double x = i == grid ? b : a + (b - a) * i / grid;
    const auto mu = Measure::atomic(a, b, {{x, 1.0}});
    auto seq = transform_impl(e, mu, false);
    auto report = hausdorff_check(seq, tol);
    if (!report.pass) {
      return HausdorffCounterexample{x, std::move(seq), std::move(report)};
    }
  }
  return std::nullopt;
}

}  // namespace expfun
