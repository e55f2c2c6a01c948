#pragma once

#include <Eigen/Dense>

namespace expfun::linalg {

/// exp(A) by scaling and squaring with the diagonal [13/13] Pade
/// approximant. The squaring count comes from the bound
/// ||A||_2 <= sqrt(||A||_1 ||A||_inf). Upper-triangular input keeps its
/// structure through the whole computation.
///
/// Throws NumericalError when more than 60 squarings would be needed.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// Number of squarings expm() uses for `a`.
int expm_squarings(const Eigen::MatrixXcd& a);

struct CholeskyResult {
  bool success = false;
  /// Lower factor; valid in its leading `rank` columns.
  Eigen::MatrixXd lower;
  /// Pivots d_j = L(j,j)^2 computed before each square root.
  Eigen::VectorXd pivots;
  /// Count of accepted pivots; equals the dimension on success.
  Eigen::Index rank = 0;
};

/// Unpivoted Cholesky that stops at the first pivot <= tol.
CholeskyResult cholesky(const Eigen::MatrixXd& a, double tol);

/// Smallest eigenvalue of a symmetric matrix (0 for an empty matrix).
double min_eigenvalue(const Eigen::MatrixXd& a);

/// Largest eigenvalue magnitude of a symmetric matrix.
double spectral_norm_symmetric(const Eigen::MatrixXd& a);

}  // namespace expfun::linalg
