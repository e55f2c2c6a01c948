#pragma once

#include <functional>
#include <vector>

namespace expfun::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive 10/21-point Gauss-Kronrod integration of f over
/// [lo, hi] to an absolute tolerance. hi < lo is allowed and yields
/// -integral(hi, lo). Throws NumericalError when the tolerance is not met
/// within max_intervals subdivisions.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double abs_tol = 1e-11,
                           int max_intervals = 2000);

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order on [lo, hi].
Rule gauss_legendre(int order, double lo, double hi);

}  // namespace expfun::quadrature
