#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pseig {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when an underlying decomposition fails to converge or produces
// non-finite output.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown (or signalled) where the two smallest singular values coincide to
// working precision, so the minimum singular triplet is not trustworthy.
struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown where sigma_min is zero to working precision and the requested
// quantity is undefined at the minimum.
struct AtEigenvalueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotNormalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested exclusion level is not below sigma_min at the center.
struct InsideLevelSetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One singular value of a matrix M with unit left/right vectors:
// M*v = sigma*u and M^H*u = sigma*v.
struct SingularTriplet {
  double sigma = 0.0;
  ComplexVector u;
  ComplexVector v;
};

// Full SVD, sigma(0) >= ... >= sigma(n-1). Column phases are fixed so the
// largest-magnitude component of each right singular vector is real positive,
// which makes decompositions reproducible bit-for-bit.
struct SvdDecomposition {
  RealVector sigma;
  ComplexMatrix U;
  ComplexMatrix V;

  Eigen::Index order() const { return sigma.size(); }
  SingularTriplet triplet(Eigen::Index i) const {
    return {sigma(i), U.col(i), V.col(i)};
  }
  SingularTriplet min_triplet() const { return triplet(order() - 1); }
  // Absolute simplicity margin of the smallest singular value
  // (+inf for 1x1 matrices, where it is simple by construction).
  double min_gap() const;
};

// Dense eigendecomposition with left vectors and per-eigenvalue condition
// numbers kappa = ||y||*||x|| / |y^H x|. Intended as ground truth for tests
// and verification commands at desk scale.
struct EigenOracleResult {
  ComplexVector eigenvalues;
  ComplexMatrix right_vectors;  // columns x_i, unit norm
  ComplexMatrix left_vectors;   // columns y_i, unit norm
  RealVector condition_numbers;

  Eigen::Index order() const { return eigenvalues.size(); }
};

void require_square(const ComplexMatrix& a, const std::string& where);
void require_finite(const ComplexMatrix& a, const std::string& where);
void require_finite(Complex z, const std::string& where);

}  // namespace pseig
