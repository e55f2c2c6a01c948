#include "expfun/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace expfun {

int PolynomialCoeffs::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[k] != 0.0) return k;
  }
  return -1;
}

double PolynomialCoeffs::operator()(double t) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

PolynomialCoeffs PolynomialCoeffs::derivative() const {
  PolynomialCoeffs d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
  }
  return d;
}

std::vector<double> real_roots_in(const PolynomialCoeffs& p, double lo, double hi) {
  const int deg = p.degree();
  std::vector<double> roots;
  if (deg < 1) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p.coeffs[i] / p.coeffs[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  const auto& ev = es.eigenvalues();
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > 1e-7 * scale) continue;
    const double r = ev(i).real();
    if (r >= lo && r <= hi) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_nonnegative_on(const PolynomialCoeffs& r, double lo, double hi, double tol) {
  constexpr int kSamples = 1024;
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  if (r(lo) < -tol || r(hi) < -tol) return false;
  for (int i = 0; i < kSamples; ++i) {
    const double t = center + half * std::cos(std::numbers::pi * (i + 0.5) / kSamples);
    if (r(t) < -tol) return false;
  }
  for (double t : real_roots_in(r.derivative(), lo, hi)) {
    if (r(t) < -tol) return false;
  }
  return true;
}

PolynomialCoeffs square(std::span<const double> p) {
  PolynomialCoeffs out;
  if (p.empty()) return out;
  out.coeffs.assign(2 * p.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) out.coeffs[i + j] += p[i] * p[j];
  }
  return out;
}

}  // namespace expfun
