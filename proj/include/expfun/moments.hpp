#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expfun/fundamental.hpp"
#include "expfun/inequalities.hpp"
#include "expfun/polynomial.hpp"

namespace expfun {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// A nonnegative measure on [a, b], either atomic or given by a density.
class Measure {
 public:
  enum class Kind { atoms, density };
  using Density = std::function<double(double)>;

  /// Throws std::invalid_argument for a negative weight, an atom outside
  /// [a, b] by more than 1e-8, or a > b.
  static Measure atomic(double a, double b, std::vector<Atom> atoms);
  /// Requires a < b. Nonnegativity of the density is spot-checked when it
  /// is integrated.
  static Measure with_density(double a, double b, Density density,
                              std::string name = "density");

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Density& density() const { return density_; }
  const std::string& name() const { return name_; }

 private:
  Measure() = default;

  Kind kind_ = Kind::atoms;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<Atom> atoms_;
  Density density_;
  std::string name_;
};

/// s_0..s_n together with the interval [origin, origin + support_length]
/// the sequence is meant to live on.
struct MomentSequence {
  std::vector<double> values;
  double support_length = 0.0;
  double origin = 0.0;
  /// False when Phi^(n+1) >= 0 could not be certified on [0, b - a].
  bool hypothesis_certified = true;
  /// Gauss-Legendre order used for a density (0 for atoms).
  int quadrature_order = 0;

  int order() const { return static_cast<int>(values.size()) - 1; }
};

/// s_k = integral of k! Phi^(n-k)(x - a) dmu(x), k = 0..n. Atoms are summed
/// exactly; densities use Gauss-Legendre from order 64, doubled until two
/// successive sequences agree to 1e-11 (NumericalError past order 4096).
/// The hypothesis is checked with verify_sign on [0, b - a] and recorded.
MomentSequence transform(const FundamentalEvaluator& e, const Measure& mu,
                         int grid = kDefaultGrid);

/// Same, reusing an existing scan of Phi^(n+1); the hypothesis counts as
/// certified when that scan is nonnegative and covers [0, b - a].
MomentSequence transform(const FundamentalEvaluator& e, const Measure& mu,
                         const SignReport& certificate);

/// sum_k a_k s_k. Requires deg R <= n.
double riesz_functional(const MomentSequence& s, const PolynomialCoeffs& r);

struct HankelCondition {
  std::string name;
  Eigen::MatrixXd matrix;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

struct HausdorffReport {
  bool pass = true;
  std::vector<HankelCondition> conditions;
};

/// Truncated Hausdorff conditions on [0, b], b = support_length, m = n/2:
///   n = 2m:   (s_{i+j})_{0..m} >= 0 and (b s_{i+j+1} - s_{i+j+2})_{0..m-1} >= 0
///   n = 2m+1: (s_{i+j+1})_{0..m} >= 0 and (b s_{i+j} - s_{i+j+1})_{0..m} >= 0
/// Each matrix passes when its smallest eigenvalue is >= -tol * ||matrix||.
HausdorffReport hausdorff_check(const MomentSequence& s, double tol = 1e-10);

/// Principal atomic representative of s. Odd n uses the Gauss rule of the
/// moment functional; even n fixes an atom at the left end and applies the
/// Gauss rule to t dnu(t). Nodes and weights come from the Jacobi matrix
/// obtained by Cholesky of the Hankel matrix; rank deficiency truncates the
/// node count. Atoms are returned at origin + t.
///
/// Throws NumericalError when the Hausdorff check fails or an atom lands
/// outside the interval by more than 1e-8.
Measure recover_measure(const MomentSequence& s, double tol = 1e-10);

/// Gauss rule from moments mu_0..mu_{2N-1} (rank-truncated below N).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule_from_moments(const std::vector<double>& moments, int nodes,
                                  double tol = 1e-10);

/// Ordinary moments integral (x - origin)^k dnu, k = 0..count-1, of an
/// atomic measure.
std::vector<double> ordinary_moments(const Measure& nu, double origin, int count);

/// |ordinary moment of nu - s_k| for every k.
std::vector<double> moment_residuals(const Measure& nu, const MomentSequence& s);

struct HausdorffCounterexample {
  double location = 0.0;
  MomentSequence sequence;
  HausdorffReport report;
};

/// Scans unit atoms at a + (b - a) i / grid, i = 0..grid, and returns the
/// first whose transformed sequence fails the Hausdorff check.
std::optional<HausdorffCounterexample> search_hausdorff_counterexample(
    const FundamentalEvaluator& e, double a, double b, int grid = 256,
    double tol = 1e-10);

}  // namespace expfun
