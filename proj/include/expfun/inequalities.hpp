#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "expfun/fundamental.hpp"
#include "expfun/polynomial.hpp"

namespace expfun {

inline constexpr int kDefaultGrid = 4096;
inline constexpr double kBisectionTol = 1e-10;
/// Default slack for sign scans; absorbs roundoff where Phi^(m) touches zero.
inline constexpr double kDefaultSignTol = 1e-12;

enum class Orientation { nonnegative, nonpositive };
enum class SignStatus { nonnegative, nonpositive, violated };

const char* to_string(SignStatus status);

/// Result of a sampled sign scan. A satisfied status is a sampling
/// certificate, not a proof.
struct SignReport {
  SignStatus status = SignStatus::nonnegative;
  int order = 0;
  double lo = 0.0;
  double hi = 0.0;
  /// Number of grid intervals; grid + 1 points are sampled.
  int samples = 0;
  /// First sample with the wrong sign beyond tol, and its value.
  std::optional<double> witness;
  std::optional<double> witness_value;
  /// Sign change adjacent to the witness, refined by bisection.
  std::optional<double> boundary;
};

/// Scans Phi^(m) on a uniform grid over [lo, hi] for the required sign.
/// Nonpositive orientation checks -Phi^(m). Requires lo < hi, grid >= 64.
SignReport verify_sign(const FundamentalEvaluator& e, int m, double lo, double hi,
                       int grid = kDefaultGrid, double tol = kDefaultSignTol,
                       Orientation orientation = Orientation::nonnegative);

/// Bisects a bracket [a, b] whose endpoints fall on different sides of
/// zero ((f >= 0) differs) until it is narrower than `width`; returns the
/// midpoint.
double bisect_sign_change(const std::function<double(double)>& f, double a,
                          double b, double width = kBisectionTol);

struct IdentityTerms {
  /// sum_k a_k k! Phi^(n-k)(x)
  double lhs = 0.0;
  /// R(x)
  double polynomial = 0.0;
  /// integral_0^x R(t) Phi^(n+1)(x - t) dt (negated orientation for x < 0)
  double integral = 0.0;
  double residual() const;
};

/// Both sides of the integral identity. Requires deg R <= n.
IdentityTerms identity_terms(const FundamentalEvaluator& e,
                             const PolynomialCoeffs& r, double x);

/// |LHS - R(x) - integral|; the integral uses adaptive Gauss-Kronrod to an
/// absolute tolerance of 1e-11.
double identity_residual(const FundamentalEvaluator& e, const PolynomialCoeffs& r,
                         double x);

/// sum_k a_k b_k(x) - R(x).
double dominance_gap(const FundamentalEvaluator& e, const PolynomialCoeffs& r,
                     double x);

/// Hankel matrix with entries (r+s)! Phi^(top - (r+s))(x), r, s = 0..k.
/// The usual choice is top = n; a larger top order reproduces matrices built
/// from higher derivatives.
struct HankelMatrix {
  int k = 0;
  int top_order = 0;
  double x = 0.0;
  Eigen::MatrixXd entries;

  Eigen::Index dim() const { return entries.rows(); }
  double determinant() const;
};

/// Requires 0 <= 2k <= top_order; top_order < 0 selects n.
HankelMatrix hankel_matrix(const FundamentalEvaluator& e, int k, double x,
                           int top_order = -1);

/// True iff Cholesky succeeds with every pivot > tol.
bool is_positive_definite(const HankelMatrix& h, double tol = 0.0);

/// (Phi')^2 / (Phi'' Phi). Throws NumericalError when |Phi'' Phi| <= 1e-14 (Phi')^2,
/// i.e. the ratio would exceed 1e14 or the denominator vanishes.
double turan_ratio(const FundamentalEvaluator& e, double x);

/// n / (n - 1), the upper Turan bound; requires n >= 2.
double turan_upper_bound(int n);

enum class MonotonicityTag { symmetric, pair_chain, some_nonneg, none };

const char* to_string(MonotonicityTag tag);

struct MonotonicityCertificate {
  MonotonicityTag tag = MonotonicityTag::none;
  /// Disjoint index pairs (j, k) with lambda_j + lambda_k >= 0, in the order
  /// the greedy pairing found them.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// Index of a nonnegative frequency, if any.
  std::optional<std::size_t> nonneg_index;
  /// Highest derivative order k such that Phi^(j) >= 0 on x > 0 for all
  /// 1 <= j <= k; nullopt means every order.
  std::optional<int> certified_order;
  /// All frequencies negative: Phi' is not positive on (0, inf).
  bool counter_certificate = false;
  /// A point in [0, inf) where Phi' vanishes (or is already negative when
  /// n == 0).
  std::optional<double> counter_witness;

  int chain_depth() const { return static_cast<int>(pairs.size()); }
};

/// Strongest applicable monotonicity statement for real frequencies.
/// Throws std::invalid_argument for non-real input.
MonotonicityCertificate monotonicity_certificate(const FrequencyVector& freq);

}  // namespace expfun
