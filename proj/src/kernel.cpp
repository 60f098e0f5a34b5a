#include "pseig/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <cstring>
#include <limits>

namespace pseig {

void require_square(const ComplexMatrix& a, const std::string& where) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument(where + ": matrix must be square and nonempty");
}

void require_finite(const ComplexMatrix& a, const std::string& where) {
  if (!a.allFinite())
    throw std::invalid_argument(where + ": matrix has non-finite entries");
}

void require_finite(Complex z, const std::string& where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument(where + ": non-finite shift");
}

double SvdDecomposition::min_gap() const {
  const auto n = order();
  if (n < 2) return std::numeric_limits<double>::infinity();
  return sigma(n - 2) - sigma(n - 1);
}

ComplexMatrix shift(const ComplexMatrix& a, Complex z) {
  require_square(a, "shift");
  require_finite(a, "shift");
  require_finite(z, "shift");
  ComplexMatrix m = -a;
  m.diagonal().array() += z;
  return m;
}

namespace {

// Rotate each (u_i, v_i) pair by a common unit phase so that the
// largest-magnitude component of v_i is real positive. v^H u is unchanged.
void fix_phases(ComplexMatrix& u, ComplexMatrix& v) {
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    Eigen::Index k = 0;
    v.col(i).cwiseAbs().maxCoeff(&k);
    const Complex pivot = v(k, i);
    const double mag = std::abs(pivot);
    if (mag == 0.0) continue;
    const Complex phase = std::conj(pivot) / mag;
    v.col(i) *= phase;
    u.col(i) *= phase;
  }
}

}  // namespace

SvdDecomposition svd_full(const ComplexMatrix& m, SvdMethod method) {
  require_square(m, "svd_full");
  require_finite(m, "svd_full");
  SvdDecomposition d;
  if (method == SvdMethod::precise) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
      throw NumericError("svd_full: Jacobi SVD did not converge");
    d.sigma = svd.singularValues();
    d.U = svd.matrixU();
    d.V = svd.matrixV();
  } else {
    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
      throw NumericError("svd_full: BDC SVD did not converge");
    d.sigma = svd.singularValues();
    d.U = svd.matrixU();
    d.V = svd.matrixV();
  }
  if (!d.sigma.allFinite())
    throw NumericError("svd_full: non-finite singular values");
  fix_phases(d.U, d.V);
  return d;
}

RealVector svd_values(const ComplexMatrix& m, SvdMethod method) {
  require_square(m, "svd_values");
  require_finite(m, "svd_values");
  RealVector s;
  if (method == SvdMethod::precise) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    if (svd.info() != Eigen::Success)
      throw NumericError("svd_values: Jacobi SVD did not converge");
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    if (svd.info() != Eigen::Success)
      throw NumericError("svd_values: BDC SVD did not converge");
    s = svd.singularValues();
  }
  if (!s.allFinite()) throw NumericError("svd_values: non-finite singular values");
  return s;
}

double sigma_min(const ComplexMatrix& m, SvdMethod method) {
  const RealVector s = svd_values(m, method);
  return s(s.size() - 1);
}

std::pair<SingularTriplet, double> min_triplet(const ComplexMatrix& m,
                                               SvdMethod method) {
  const SvdDecomposition d = svd_full(m, method);
  return {d.min_triplet(), d.min_gap()};
}

namespace {

// Null-ish vector of the shifted triangular factor: right eigenvector of an
// upper triangular T for the eigenvalue at diagonal position k, by back
// substitution with guarded pivots.
ComplexVector triangular_right_eigvec(const ComplexMatrix& t, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  const Complex lambda = t(k, k);
  const double smin =
      std::numeric_limits<double>::epsilon() * t.cwiseAbs().maxCoeff() +
      std::numeric_limits<double>::min();
  ComplexVector w = ComplexVector::Zero(n);
  w(k) = 1.0;
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    Complex acc = 0.0;
    for (Eigen::Index j = i + 1; j <= k; ++j) acc += t(i, j) * w(j);
    Complex d = t(i, i) - lambda;
    if (std::abs(d) < smin) d = smin;
    w(i) = -acc / d;
  }
  return w;
}

// Row null vector m with m*T = lambda*m, m(k) = 1; the left eigenvector of T
// is conj(m).
ComplexVector triangular_left_eigvec(const ComplexMatrix& t, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  const Complex lambda = t(k, k);
  const double smin =
      std::numeric_limits<double>::epsilon() * t.cwiseAbs().maxCoeff() +
      std::numeric_limits<double>::min();
  ComplexVector m = ComplexVector::Zero(n);
  m(k) = 1.0;
  for (Eigen::Index j = k + 1; j < n; ++j) {
    Complex acc = 0.0;
    for (Eigen::Index i = k; i < j; ++i) acc += m(i) * t(i, j);
    Complex d = lambda - t(j, j);
    if (std::abs(d) < smin) d = smin;
    m(j) = acc / d;
  }
  return m.conjugate();
}

}  // namespace

EigenOracleResult eig_oracle(const ComplexMatrix& a) {
  require_square(a, "eig_oracle");
  require_finite(a, "eig_oracle");
  const Eigen::Index n = a.rows();

  Eigen::ComplexSchur<ComplexMatrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw NumericError("eig_oracle: Schur decomposition did not converge");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();

  EigenOracleResult r;
  r.eigenvalues = t.diagonal();
  r.right_vectors.resize(n, n);
  r.left_vectors.resize(n, n);
  r.condition_numbers.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector x = q * triangular_right_eigvec(t, k);
    ComplexVector y = q * triangular_left_eigvec(t, k);
    x.normalize();
    y.normalize();
    const double overlap = std::abs(Complex(y.adjoint() * x));
    r.right_vectors.col(k) = x;
    r.left_vectors.col(k) = y;
    r.condition_numbers(k) =
        overlap > 0.0 ? std::max(1.0, 1.0 / overlap)
                      : std::numeric_limits<double>::infinity();
  }
  return r;
}

std::uint64_t matrix_hash(const ComplexMatrix& a) {
  // FNV-1a over the order and the raw entry bytes, column-major.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t n = static_cast<std::uint64_t>(a.rows());
  mix(&n, sizeof n);
  mix(a.data(), sizeof(Complex) * a.size());
  return h;
}

}  // namespace pseig
