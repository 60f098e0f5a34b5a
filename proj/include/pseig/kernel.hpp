#pragma once

#include <cstdint>
#include <utility>

#include "pseig/types.hpp"

namespace pseig {

// Selects the SVD algorithm. `precise` (two-sided Jacobi) keeps high relative
// accuracy for the tiny singular values the descent tail depends on; `fast`
// (divide and conquer) is for grid sweeps, where absolute accuracy near
// machine precision is enough.
enum class SvdMethod { precise, fast };

// M = z*I - A.
ComplexMatrix shift(const ComplexMatrix& a, Complex z);

// Full SVD of M with phase-fixed singular vectors. Throws NumericError if the
// underlying decomposition does not converge.
SvdDecomposition svd_full(const ComplexMatrix& m,
                          SvdMethod method = SvdMethod::precise);

// Singular values only, descending.
RealVector svd_values(const ComplexMatrix& m,
                      SvdMethod method = SvdMethod::precise);

double sigma_min(const ComplexMatrix& m, SvdMethod method = SvdMethod::precise);

// Smallest singular triplet plus the absolute gap sigma_{n-1} - sigma_n taken
// from the same decomposition (+inf for n = 1).
std::pair<SingularTriplet, double> min_triplet(
    const ComplexMatrix& m, SvdMethod method = SvdMethod::precise);

// Dense eigenvalues with left/right eigenvectors and condition numbers,
// via a complex Schur form. Test/verification oracle; n up to a few hundred.
EigenOracleResult eig_oracle(const ComplexMatrix& a);

// Content hash of (order, entries); identifies the matrix a result belongs to.
std::uint64_t matrix_hash(const ComplexMatrix& a);

}  // namespace pseig
