#include "expfun/fundamental.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "expfun/error.hpp"
#include "expfun/linalg.hpp"

namespace expfun {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

FundamentalEvaluator::FundamentalEvaluator(FrequencyVector freq)
    : freq_(std::move(freq)) {
  const auto dim = static_cast<Eigen::Index>(freq_.size());
  opitz_ = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    opitz_(j, j) = freq_[j];
    if (j + 1 < dim) opitz_(j, j + 1) = 1.0;
  }
  realify_ = is_conjugate_closed(freq_);
}

std::vector<Complex> FundamentalEvaluator::derivatives_complex(int max_m,
                                                               double x) const {
  if (max_m < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
  const Eigen::Index n = opitz_.rows() - 1;
  const Eigen::MatrixXcd ex = linalg::expm(x * opitz_);
  const Eigen::VectorXcd last_col = ex.col(n);

  // row = e_0^T Z^m, advanced one power at a time.
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(n + 1);
  row(0) = 1.0;
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(max_m) + 1);
  for (int m = 0; m <= max_m; ++m) {
    if (m > 0) row = (row * opitz_).eval();
    out.push_back((row * last_col)(0));
  }
  return out;
}

Complex FundamentalEvaluator::derivative_complex(int m, double x) const {
  return derivatives_complex(m, x).back();
}

double FundamentalEvaluator::project(const Complex& value) const {
  if (!realify_) {
    throw std::logic_error(
        "frequencies are not closed under conjugation; use derivative_complex");
  }
  if (std::abs(value.imag()) > 1e-9 * (1.0 + std::abs(value))) {
    throw NumericalError("fundamental function value has a non-real residue");
  }
  return value.real();
}

double FundamentalEvaluator::derivative(int m, double x) const {
  return project(derivative_complex(m, x));
}

std::vector<double> FundamentalEvaluator::derivatives(int max_m, double x) const {
  const auto values = derivatives_complex(max_m, x);
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(project(v));
  return out;
}

double FundamentalEvaluator::basis(int k, double x) const {
  const int n = order();
  if (k < 0 || k > n) throw std::invalid_argument("basis index out of range");
  return factorial(k) * derivative(n - k, x);
}

std::vector<double> FundamentalEvaluator::basis_all(double x) const {
  const int n = order();
  const auto d = derivatives(n, x);
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out[k] = factorial(k) * d[n - k];
  return out;
}

Complex eval_via_partial_fractions(const FrequencyVector& freq, int m, double x) {
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
  const auto lam = freq.entries();
  for (std::size_t j = 0; j < lam.size(); ++j) {
    for (std::size_t k = j + 1; k < lam.size(); ++k) {
      if (std::abs(lam[j] - lam[k]) <= 1e-6) {
        throw NumericalError("partial fractions need pairwise distinct frequencies");
      }
    }
  }
  Complex total = 0.0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    Complex denom = 1.0;
    for (std::size_t k = 0; k < lam.size(); ++k) {
      if (k != j) denom *= lam[j] - lam[k];
    }
    total += std::pow(lam[j], m) * std::exp(lam[j] * x) / denom;
  }
  return total;
}

SeriesValue eval_via_taylor(const FrequencyVector& freq, int m, double x,
                            int terms) {
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (terms < 1) throw std::invalid_argument("series needs at least one term");
  const int n = freq.order();
  const int first = std::max(m, n);
  const int last = first + terms - 1;
  const auto coeffs = taylor_coefficients(freq, last);
  const double rho = freq.max_modulus();
  const double ax = std::abs(x);

  SeriesValue out;
  out.terms = terms;
  // weight = x^(k-m) / (k-m)!, updated incrementally.
  double weight = 1.0;
  for (int j = 0; j < first - m; ++j) weight *= x / (j + 1);
  for (int k = first; k <= last; ++k) {
    out.value += coeffs[k] * weight;
    weight *= x / (k - m + 1);
  }

  // |h_d| <= C(d + n, n) rho^d, so term k is bounded by
  // C(k, n) rho^(k-n) |x|^(k-m) / (k-m)!. Bound the tail by a geometric series
  // from the first omitted term once the term ratio drops below one.
  const int k = last + 1;
  double log_bound = std::lgamma(k + 1.0) - std::lgamma(n + 1.0) -
                     std::lgamma(k - n + 1.0) - std::lgamma(k - m + 1.0);
  // With rho == 0 or x == 0 every omitted term vanishes.
  double bound = 0.0;
  if (rho > 0.0 && ax > 0.0) {
    log_bound += (k - n) * std::log(rho) + (k - m) * std::log(ax);
    bound = std::exp(log_bound);
  }
  const double ratio = (k + 1.0) / (k + 1.0 - n) * rho * ax / (k - m + 1.0);
  if (bound > 0.0) {
    out.tail_bound = ratio < 1.0 ? bound / (1.0 - ratio)
                                 : std::numeric_limits<double>::infinity();
  }
  if (!(out.tail_bound < 1e-12 * std::max(1.0, std::abs(out.value)))) {
    throw NumericalError("Taylor series tail has not converged");
  }
  return out;
}

}  // namespace expfun
