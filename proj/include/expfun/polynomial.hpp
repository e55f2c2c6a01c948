#pragma once

#include <span>
#include <vector>

namespace expfun {

/// R(t) = sum_k coeffs[k] t^k.
struct PolynomialCoeffs {
  std::vector<double> coeffs;

  /// Degree ignoring trailing zeros; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  double operator()(double t) const;
  PolynomialCoeffs derivative() const;
};

/// Real roots of p inside [lo, hi], from the eigenvalues of the companion
/// matrix.
std::vector<double> real_roots_in(const PolynomialCoeffs& p, double lo, double hi);

/// Sampled nonnegativity of R on [lo, hi]: 1024 Chebyshev points plus the
/// critical points of R, each compared against -tol.
bool is_nonnegative_on(const PolynomialCoeffs& r, double lo, double hi,
                       double tol = 0.0);

/// Coefficients of p(t)^2 for p given by `p` (ascending powers).
PolynomialCoeffs square(std::span<const double> p);

}  // namespace expfun
