#pragma once

#include <cstddef>
#include <vector>

#include "agler/matrix.hpp"
#include "agler/tolerances.hpp"

namespace agler {

/// LU factorization with partial pivoting, PA = LU packed in one matrix.
struct LuFactorization {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  double rcond = 0.0;  // 1-norm reciprocal condition number

  ComplexMatrix solve(const ComplexMatrix& b) const;
};

/// Throws SingularMatrix when rcond < tol.rcond_min.
LuFactorization lu_factor(const ComplexMatrix& a,
                          const Tolerances& tol = default_tolerances());

/// Reciprocal 1-norm condition number; 0 for an exactly singular matrix.
double rcond(const ComplexMatrix& a);

/// X with A X = B. Throws SingularMatrix when rcond(A) < tol.rcond_min.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b,
                    const Tolerances& tol = default_tolerances());

ComplexMatrix inverse(const ComplexMatrix& a,
                      const Tolerances& tol = default_tolerances());

struct HermitianEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary; column j pairs with values[j]
};

/// Cyclic complex Jacobi. Throws NotHermitian when |M - M^*| > tol.herm
/// (scaled by max(1, |M|_max)).
HermitianEig hermitian_eig(const ComplexMatrix& m,
                           const Tolerances& tol = default_tolerances());

/// Smallest eigenvalue of a Hermitian matrix; 0 for an empty matrix.
double min_eig_psd(const ComplexMatrix& m,
                   const Tolerances& tol = default_tolerances());
double max_eig(const ComplexMatrix& m,
               const Tolerances& tol = default_tolerances());

struct Svd {
  ComplexMatrix u;            // m x n; columns with s == 0 are zero
  std::vector<double> s;      // n values, descending
  ComplexMatrix v;            // n x n unitary
};

/// One-sided (Hestenes) Jacobi SVD of an m x n matrix: M = U diag(s) V^*.
Svd svd(const ComplexMatrix& m);

/// Number of singular values above tol.rank_rel * s_max.
std::size_t numerical_rank(const Svd& f,
                           const Tolerances& tol = default_tolerances());

/// Largest singular value, via the Hermitian eigenproblem of M^*M.
double op_norm(const ComplexMatrix& m);

/// PSD square root via eigendecomposition; eigenvalues in [-psd_slack, 0)
/// are clipped to zero, anything lower throws InvariantViolation.
ComplexMatrix psd_sqrt(const ComplexMatrix& m,
                       const Tolerances& tol = default_tolerances());

/// Columns orthonormalized by two passes of modified Gram-Schmidt. Input
/// columns must be numerically independent.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

/// Orthonormal basis (n x (n - r)) of the complement of the span of the
/// orthonormal columns of w (n x r).
ComplexMatrix orthonormal_complement(const ComplexMatrix& w);

}  // namespace agler
