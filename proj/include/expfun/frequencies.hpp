#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace expfun {

using Complex = std::complex<double>;

/// Default absolute tolerance used when matching frequency multisets.
inline constexpr double kDefaultMatchTol = 1e-9;

/// The frequencies (lambda_0, ..., lambda_n) of the operator
/// prod_j (d/dx - lambda_j). Entries are kept in the order given.
class FrequencyVector {
 public:
  /// Throws std::invalid_argument when empty or when an entry is not finite.
  explicit FrequencyVector(std::vector<Complex> entries);
  FrequencyVector(std::initializer_list<Complex> entries);

  static FrequencyVector from_real(std::span<const double> values);
  static FrequencyVector from_real(std::initializer_list<double> values);

  std::span<const Complex> entries() const { return entries_; }
  const Complex& operator[](std::size_t j) const { return entries_[j]; }

  /// Number of entries, n + 1.
  std::size_t size() const { return entries_.size(); }
  /// Order index n (the operator has order n + 1).
  int order() const { return static_cast<int>(entries_.size()) - 1; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const;
  /// Largest modulus among the entries.
  double max_modulus() const;
  Complex sum() const;

 private:
  std::vector<Complex> entries_;
};

/// True iff the multiset of entries equals the multiset of their conjugates
/// up to `tol`.
bool is_conjugate_closed(const FrequencyVector& freq,
                         double tol = kDefaultMatchTol);

/// True iff the multiset of entries equals the multiset of their negations
/// up to `tol`.
bool is_symmetric(const FrequencyVector& freq, double tol = kDefaultMatchTol);

/// Phi^(k)(0): zero below the order, one at k == n, and the complete
/// homogeneous symmetric polynomial of degree k - n above.
Complex taylor_coefficient(const FrequencyVector& freq, int k);

/// All Taylor data Phi^(j)(0), j = 0..max_k, in one pass.
std::vector<Complex> taylor_coefficients(const FrequencyVector& freq,
                                         int max_k);

/// Complete homogeneous symmetric polynomials h_0..h_max_degree of the
/// entries, built one variable at a time.
std::vector<Complex> complete_homogeneous(std::span<const Complex> vars,
                                          int max_degree);

/// Elementary symmetric polynomials e_0..e_N of the entries.
std::vector<Complex> elementary_symmetric(std::span<const Complex> vars);

/// Necessary condition for Phi^(n+1) >= 0 on [0, inf): Re(sum) >= 0.
/// Throws std::invalid_argument when |Im(sum)| > 1e-9.
bool check_necessary(const FrequencyVector& freq);

}  // namespace expfun
