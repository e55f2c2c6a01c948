#pragma once

#include <Eigen/Dense>

#include "expfun/frequencies.hpp"

namespace expfun {

/// Evaluates derivatives of the fundamental function Phi of a frequency
/// vector. Phi^(m)(x) is the top-right entry of Z^m exp(xZ), where Z is the
/// upper-bidiagonal matrix with the frequencies on its diagonal and ones on
/// its superdiagonal. Repeated frequencies need no special handling.
///
/// Immutable once built; evaluation is safe from any number of threads.
class FundamentalEvaluator {
 public:
  explicit FundamentalEvaluator(FrequencyVector freq);

  const FrequencyVector& frequencies() const { return freq_; }
  int order() const { return freq_.order(); }
  /// True when the frequencies are closed under conjugation, so Phi is real.
  bool realify() const { return realify_; }
  const Eigen::MatrixXcd& opitz_matrix() const { return opitz_; }

  /// Phi^(m)(x) projected to the reals. Throws std::logic_error when the
  /// evaluator is not real-valued and NumericalError when the imaginary
  /// residue exceeds 1e-9 * (1 + |value|).
  double derivative(int m, double x) const;

  /// Phi^(m)(x) without projection.
  Complex derivative_complex(int m, double x) const;

  /// Phi^(j)(x) for j = 0..max_m, sharing one matrix exponential.
  std::vector<Complex> derivatives_complex(int max_m, double x) const;
  std::vector<double> derivatives(int max_m, double x) const;

  /// b_k(x) = k! Phi^(n-k)(x), 0 <= k <= n.
  double basis(int k, double x) const;
  /// b_0(x)..b_n(x).
  std::vector<double> basis_all(double x) const;

 private:
  double project(const Complex& value) const;

  FrequencyVector freq_;
  Eigen::MatrixXcd opitz_;
  bool realify_ = false;
};

inline FundamentalEvaluator build_evaluator(FrequencyVector freq) {
  return FundamentalEvaluator(std::move(freq));
}

inline double eval_derivative(const FundamentalEvaluator& e, int m, double x) {
  return e.derivative(m, x);
}

inline Complex eval_derivative_complex(const FundamentalEvaluator& e, int m,
                                       double x) {
  return e.derivative_complex(m, x);
}

inline double basis(const FundamentalEvaluator& e, int k, double x) {
  return e.basis(k, x);
}

/// Independent oracle for pairwise distinct frequencies:
/// sum_j lambda_j^m e^(lambda_j x) / prod_{k != j}(lambda_j - lambda_k).
/// Throws NumericalError when two frequencies are closer than 1e-6.
Complex eval_via_partial_fractions(const FrequencyVector& freq, int m, double x);

struct SeriesValue {
  Complex value;
  /// Geometric bound on the neglected tail.
  double tail_bound = 0.0;
  int terms = 0;
};

/// Truncated Taylor series of Phi^(m) about 0 using `terms` terms.
/// Throws NumericalError when the tail bound is not below
/// 1e-12 * max(1, |value|).
SeriesValue eval_via_taylor(const FrequencyVector& freq, int m, double x,
                            int terms = 80);

}  // namespace expfun
