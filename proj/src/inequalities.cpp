#include "expfun/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "expfun/error.hpp"
#include "expfun/linalg.hpp"
#include "expfun/quadrature.hpp"

namespace expfun {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void require_degree(const FundamentalEvaluator& e, const PolynomialCoeffs& r) {
  if (r.degree() > e.order()) {
    throw std::invalid_argument("polynomial degree exceeds the operator order n");
  }
}

}  // namespace

const char* to_string(SignStatus status) {
  switch (status) {
    case SignStatus::nonnegative: return "nonnegative";
    case SignStatus::nonpositive: return "nonpositive";
    case SignStatus::violated: return "violated";
  }
  return "unknown";
}

double bisect_sign_change(const std::function<double(double)>& f, double a,
                          double b, double width) {
  const bool side_a = f(a) >= 0.0;
  if ((f(b) >= 0.0) == side_a) {
    throw std::invalid_argument("bisection needs a sign-change bracket");
  }
  while (std::abs(b - a) > width) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if ((f(mid) >= 0.0) == side_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

SignReport verify_sign(const FundamentalEvaluator& e, int m, double lo, double hi,
                       int grid, double tol, Orientation orientation) {
  if (!(lo < hi)) throw std::invalid_argument("verify_sign needs lo < hi");
  if (grid < 64) throw std::invalid_argument("verify_sign needs grid >= 64");
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");

  const double sign = orientation == Orientation::nonnegative ? 1.0 : -1.0;
  const auto g = [&](double x) { return sign * e.derivative(m, x); };
  const double step = (hi - lo) / grid;
  const auto at = [&](int i) { return i == grid ? hi : lo + i * step; };

  std::vector<double> values(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) values[i] = g(at(i));

  SignReport report;
  report.order = m;
  report.lo = lo;
  report.hi = hi;
  report.samples = grid;
  report.status = orientation == Orientation::nonnegative ? SignStatus::nonnegative
                                                          : SignStatus::nonpositive;

  // Lowest index wins so the result is independent of evaluation order.
  const auto first_bad = std::find_if(values.begin(), values.end(),
                                      [tol](double v) { return v < -tol; });
  if (first_bad == values.end()) return report;

  const int w = static_cast<int>(first_bad - values.begin());
  report.status = SignStatus::violated;
  report.witness = at(w);
  report.witness_value = sign * values[w];

  int left = -1;
  for (int j = w - 1; j >= 0; --j) {
    if (values[j] >= 0.0) {
      left = j;
      break;
    }
  }
  if (left >= 0) {
    report.boundary = bisect_sign_change(g, at(left), at(left + 1));
    return report;
  }
  for (int j = w + 1; j <= grid; ++j) {
    if (values[j] >= 0.0) {
      report.boundary = bisect_sign_change(g, at(j - 1), at(j));
      break;
    }
  }
  return report;
}

double IdentityTerms::residual() const {
  return std::abs(lhs - polynomial - integral);
}

IdentityTerms identity_terms(const FundamentalEvaluator& e,
                             const PolynomialCoeffs& r, double x) {
  require_degree(e, r);
  const int n = e.order();
  IdentityTerms terms;
  const auto b = e.basis_all(x);
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) terms.lhs += r.coeffs[k] * b[k];
  terms.polynomial = r(x);
  const auto integrand = [&](double t) { return r(t) * e.derivative(n + 1, x - t); };
  terms.integral = quadrature::integrate(integrand, 0.0, x, 1e-11).value;
  return terms;
}

double identity_residual(const FundamentalEvaluator& e, const PolynomialCoeffs& r,
                         double x) {
  return identity_terms(e, r, x).residual();
}

double dominance_gap(const FundamentalEvaluator& e, const PolynomialCoeffs& r,
                     double x) {
  require_degree(e, r);
  const auto b = e.basis_all(x);
  double total = 0.0;
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) total += r.coeffs[k] * b[k];
  return total - r(x);
}

double HankelMatrix::determinant() const {
  if (entries.size() == 0) return 1.0;
  return entries.fullPivLu().determinant();
}

HankelMatrix hankel_matrix(const FundamentalEvaluator& e, int k, double x,
                           int top_order) {
  const int top = top_order < 0 ? e.order() : top_order;
  if (k < 0) throw std::invalid_argument("Hankel half-order must be >= 0");
  if (2 * k > top) {
    throw std::invalid_argument("Hankel half-order too large: need 2k <= top order");
  }
  const auto d = e.derivatives(top, x);
  HankelMatrix h;
  h.k = k;
  h.top_order = top;
  h.x = x;
  h.entries.resize(k + 1, k + 1);
  for (int r = 0; r <= k; ++r) {
    for (int s = 0; s <= k; ++s) h.entries(r, s) = factorial(r + s) * d[top - (r + s)];
  }
  return h;
}

bool is_positive_definite(const HankelMatrix& h, double tol) {
  return linalg::cholesky(h.entries, tol).success;
}

double turan_ratio(const FundamentalEvaluator& e, double x) {
  const auto d = e.derivatives(2, x);
  const double denom = d[2] * d[0];
  if (denom == 0.0 || std::abs(denom) <= 1e-14 * d[1] * d[1]) {
    throw NumericalError("Turan ratio undefined: Phi'' * Phi is numerically zero");
  }
  return d[1] * d[1] / denom;
}

double turan_upper_bound(int n) {
  if (n < 2) throw std::invalid_argument("Turan upper bound needs n >= 2");
  return static_cast<double>(n) / (n - 1);
}

const char* to_string(MonotonicityTag tag) {
  switch (tag) {
    case MonotonicityTag::symmetric: return "SYMMETRIC";
    case MonotonicityTag::pair_chain: return "PAIR_CHAIN";
    case MonotonicityTag::some_nonneg: return "SOME_NONNEG";
    case MonotonicityTag::none: return "NONE";
  }
  return "unknown";
}

namespace {

// Locates a zero of Phi' on (0, inf) when every frequency is negative: Phi
// starts at 0 (n >= 1), rises, and decays, so Phi' changes sign.
std::optional<double> locate_derivative_zero(const FundamentalEvaluator& e) {
  const auto dphi = [&](double x) { return e.derivative(1, x); };
  constexpr int kGrid = 256;
  for (double span = 1.0; span <= 1024.0; span *= 2.0) {
    const double step = span / kGrid;
    double prev_x = step;
    double prev = dphi(prev_x);
    for (int i = 2; i <= kGrid; ++i) {
      const double x = i * step;
      const double v = dphi(x);
      if ((v >= 0.0) != (prev >= 0.0)) return bisect_sign_change(dphi, prev_x, x);
      prev_x = x;
      prev = v;
    }
  }
  return std::nullopt;
}

}  // namespace

MonotonicityCertificate monotonicity_certificate(const FrequencyVector& freq) {
  if (!freq.is_real()) {
    throw std::invalid_argument("monotonicity certificates need real frequencies");
  }
  const auto lam = freq.entries();
  MonotonicityCertificate cert;

  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (lam[j].real() >= 0.0) {
      cert.nonneg_index = j;
      break;
    }
  }

  // Two-pointer greedy: the largest remaining value takes the smallest
  // partner that keeps the pair sum nonnegative.
  std::vector<std::size_t> idx(lam.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return lam[a].real() < lam[b].real();
  });
  std::size_t lo = 0;
  std::size_t hi = idx.size() - 1;
  while (lo < hi) {
    if (lam[idx[lo]].real() + lam[idx[hi]].real() >= 0.0) {
      cert.pairs.emplace_back(idx[hi], idx[lo]);
      ++lo;
      --hi;
    } else {
      ++lo;
    }
  }

  if (is_symmetric(freq)) {
    cert.tag = MonotonicityTag::symmetric;
    cert.certified_order = std::nullopt;
  } else if (!cert.pairs.empty()) {
    cert.tag = MonotonicityTag::pair_chain;
    cert.certified_order = 2 * cert.chain_depth();
  } else if (cert.nonneg_index) {
    cert.tag = MonotonicityTag::some_nonneg;
    cert.certified_order = 1;
  } else {
    cert.tag = MonotonicityTag::none;
    cert.certified_order = 0;
    cert.counter_certificate = true;
    if (freq.order() == 0) {
      cert.counter_witness = 0.0;
    } else {
      cert.counter_witness = locate_derivative_zero(FundamentalEvaluator(freq));
    }
  }
  return cert;
}

}  // namespace expfun
