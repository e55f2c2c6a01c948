#include "expfun/frequencies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace expfun {

FrequencyVector::FrequencyVector(std::vector<Complex> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("frequency vector must have at least one entry");
  }
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw std::invalid_argument("frequency vector entries must be finite");
    }
  }
}

FrequencyVector::FrequencyVector(std::initializer_list<Complex> entries)
    : FrequencyVector(std::vector<Complex>(entries)) {}

FrequencyVector FrequencyVector::from_real(std::span<const double> values) {
  std::vector<Complex> entries(values.begin(), values.end());
  return FrequencyVector(std::move(entries));
}

FrequencyVector FrequencyVector::from_real(std::initializer_list<double> values) {
  return from_real(std::span<const double>(values.begin(), values.size()));
}

bool FrequencyVector::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& e) { return e.imag() == 0.0; });
}

double FrequencyVector::max_modulus() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

Complex FrequencyVector::sum() const {
  Complex s = 0.0;
  for (const auto& e : entries_) s += e;
  return s;
}

namespace {

// Greedy matching of `targets` against the entries: each target consumes the
// nearest unused entry, which must lie within tol.
bool multiset_matches(std::span<const Complex> entries,
                      const std::vector<Complex>& targets, double tol) {
  std::vector<bool> used(entries.size(), false);
  for (const auto& t : targets) {
    std::size_t best = entries.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(entries[i] - t);
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    if (best == entries.size() || best_dist > tol) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace

bool is_conjugate_closed(const FrequencyVector& freq, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  std::vector<Complex> conj;
  conj.reserve(freq.size());
  for (const auto& e : freq.entries()) conj.push_back(std::conj(e));
  return multiset_matches(freq.entries(), conj, tol);
}

bool is_symmetric(const FrequencyVector& freq, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  std::vector<Complex> neg;
  neg.reserve(freq.size());
  for (const auto& e : freq.entries()) neg.push_back(-e);
  return multiset_matches(freq.entries(), neg, tol);
}

std::vector<Complex> complete_homogeneous(std::span<const Complex> vars,
                                          int max_degree) {
  if (max_degree < 0) return {};
  // h[d] over the prefix processed so far; adding variable v gives
  // h'[d] = h[d] + v * h'[d-1].
  std::vector<Complex> h(static_cast<std::size_t>(max_degree) + 1, 0.0);
  h[0] = 1.0;
  for (const auto& v : vars) {
    for (int d = 1; d <= max_degree; ++d) h[d] += v * h[d - 1];
  }
  return h;
}

std::vector<Complex> elementary_symmetric(std::span<const Complex> vars) {
  std::vector<Complex> e(vars.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t d = i + 1; d >= 1; --d) e[d] += vars[i] * e[d - 1];
  }
  return e;
}

std::vector<Complex> taylor_coefficients(const FrequencyVector& freq,
                                         int max_k) {
  if (max_k < 0) throw std::invalid_argument("derivative order must be >= 0");
  const int n = freq.order();
  std::vector<Complex> out(static_cast<std::size_t>(max_k) + 1, 0.0);
  if (max_k < n) return out;
  const auto h = complete_homogeneous(freq.entries(), max_k - n);
  for (int k = n; k <= max_k; ++k) out[k] = h[k - n];
  return out;
}

Complex taylor_coefficient(const FrequencyVector& freq, int k) {
  return taylor_coefficients(freq, k).back();
}

bool check_necessary(const FrequencyVector& freq) {
  const Complex s = freq.sum();
  if (std::abs(s.imag()) > 1e-9) {
    throw std::invalid_argument(
        "frequency sum is not real; the fundamental function is not real-valued");
  }
  return s.real() >= 0.0;
}

}  // namespace expfun
