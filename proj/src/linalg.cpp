#include "expfun/linalg.hpp"

#include <cmath>

#include "expfun/error.hpp"

namespace expfun::linalg {

namespace {

constexpr double kTheta13 = 5.371920351148152;
constexpr int kMaxSquarings = 60;

constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};

bool is_upper_triangular(const Eigen::MatrixXcd& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
      if (a(i, j) != std::complex<double>(0.0)) return false;
    }
  }
  return true;
}

double spectral_bound(const Eigen::MatrixXcd& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(norm1 * norm_inf);
}

}  // namespace

int expm_squarings(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0;
  const double bound = spectral_bound(a);
  if (!std::isfinite(bound)) {
    throw NumericalError("matrix exponential argument is not finite");
  }
  if (bound <= kTheta13) return 0;
  const int s = static_cast<int>(std::ceil(std::log2(bound / kTheta13)));
  if (s > kMaxSquarings) {
    throw NumericalError("matrix exponential argument too large (scaling exceeds 2^60)");
  }
  return std::max(s, 0);
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const Eigen::Index dim = a.rows();
  if (dim != a.cols()) throw NumericalError("expm needs a square matrix");
  if (dim == 0) return a;

  const int s = expm_squarings(a);
  const Eigen::MatrixXcd as = a * std::ldexp(1.0, -s);
  const bool upper = is_upper_triangular(a);

  const auto& b = kPade13;
  const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd a2 = as * as;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a4 * a2;

  const Eigen::MatrixXcd u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                                   b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Eigen::MatrixXcd u = as * u_inner;
  const Eigen::MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                             b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  const Eigen::MatrixXcd numer = v + u;
  const Eigen::MatrixXcd denom = v - u;
  Eigen::MatrixXcd r;
  if (upper) {
    r = denom.triangularView<Eigen::Upper>().solve(numer);
    r.triangularView<Eigen::StrictlyLower>().setZero();
  } else {
    r = denom.partialPivLu().solve(numer);
  }
  for (int i = 0; i < s; ++i) {
    if (upper) {
      r = (r.triangularView<Eigen::Upper>() * r).eval();
    } else {
      r = (r * r).eval();
    }
  }
  if (!r.allFinite()) throw NumericalError("matrix exponential overflowed");
  return r;
}

CholeskyResult cholesky(const Eigen::MatrixXd& a, double tol) {
  const Eigen::Index dim = a.rows();
  CholeskyResult out;
  out.lower = Eigen::MatrixXd::Zero(dim, dim);
  out.pivots = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= out.lower(j, k) * out.lower(j, k);
    out.pivots(j) = d;
    if (!(d > tol)) {
      out.rank = j;
      return out;
    }
    const double ljj = std::sqrt(d);
    out.lower(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < dim; ++i) {
      double v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= out.lower(i, k) * out.lower(j, k);
      out.lower(i, j) = v / ljj;
    }
  }
  out.rank = dim;
  out.success = true;
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double spectral_norm_symmetric(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace expfun::linalg
