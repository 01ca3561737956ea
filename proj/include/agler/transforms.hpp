#pragma once

#include <cstdint>
#include <span>

#include "agler/classes.hpp"
#include "agler/decomp.hpp"
#include "agler/matrix.hpp"
#include "agler/tolerances.hpp"

namespace agler {

// Point maps between the polydisk and the right polyhalfplane:
//   z -> w = (1 + z) / (1 - z),   w -> z = (w - 1) / (w + 1).
Point cayley_point_d2h(std::span<const cplx> z);  // throws PoleAtOne
Point cayley_point_h2d(std::span<const cplx> w);  // throws PoleAtMinusOne

/// S = (F - I)(F + I)^{-1}. Throws SingularMatrix when rcond(F + I) < 1e-12.
ComplexMatrix cayley_value_F_to_S(const ComplexMatrix& f);
/// F = (I + S)(I - S)^{-1}. Throws SingularMatrix when rcond(I - S) < 1e-12.
ComplexMatrix cayley_value_S_to_F(const ComplexMatrix& s);

/// Orthogonal splitting of a unitary U into its 1-eigenspace and the
/// complement, where U has no eigenvalue within split_tol of 1.
struct EigenSplit {
  ComplexMatrix basis1;  // n x n1, orthonormal
  ComplexMatrix basis0;  // n x n0, orthonormal
  ComplexMatrix u00;     // basis0^* U basis0
};

/// Throws NotUnitary.
EigenSplit split_eigenspace_one(const ComplexMatrix& u, double split_tol,
                                const Tolerances& tol = default_tolerances());

/// Y = (I + U)(I - U)^{-1}. Throws NotUnitary or EigenvalueOne.
ComplexMatrix unitary_to_skew(const ComplexMatrix& u,
                              const Tolerances& tol = default_tolerances());
/// U = (Y - I)(Y + I)^{-1}. Throws NotSkewAdjoint.
ComplexMatrix skew_to_unitary(const ComplexMatrix& y,
                              const Tolerances& tol = default_tolerances());

enum class VNormalization {
  kDerived,  // V = B(I - D)^{-1}; V^*V equals Re F(0)
  kLiteral,  // V = B / sqrt(2); kept for comparison, fails V^*V = Re F(0)
};

/// Herglotz representation of F = (I + S)(I - S)^{-1} for S realized by a
/// unitary colligation: U = (A + B(I - D)^{-1}C)^*, V per `norm`,
/// R = skew part of (I + D)(I - D)^{-1}.
/// Throws NotUnitary, SingularIminusD.
HerglotzRepresentation schur_gr_to_herglotz_rep(
    const SchurGRColligation& col, VNormalization norm = VNormalization::kDerived,
    const Tolerances& tol = default_tolerances());

/// Impedance node over Pi^d whose transfer function is w -> F(z(w)) with
/// F = (I + S)(I - S)^{-1}, built from the Cayley transform of the whole
/// colligation matrix. Throws NotUnitary or EigenvalueOne.
PiNode gr_to_pi_impedance(const SchurGRColligation& col,
                          const Tolerances& tol = default_tolerances());

/// Representation of the same function realized by an (id)-colligation:
/// U = A^*, V = B / sqrt(2), R = skew part of D.
HerglotzRepresentation herglotz_colligation_to_rep(
    const HerglotzDiskColligation& col,
    const Tolerances& tol = default_tolerances());

/// (id)-colligation of a representation: A = U^*, B = sqrt(2) V, C = B^*A,
/// D = R + V^*V.
HerglotzDiskColligation herglotz_rep_to_colligation(
    const HerglotzRepresentation& rep,
    const Tolerances& tol = default_tolerances());

/// Unitary colligation realizing S = (F - I)(F + I)^{-1} for F given by an
/// (id)-colligation: A - B(D+I)^{-1}C, sqrt2 B(D+I)^{-1},
/// sqrt2 (D+I)^{-1}C, (D-I)(D+I)^{-1}.
SchurGRColligation herglotz_colligation_to_schur_gr(
    const HerglotzDiskColligation& col,
    const Tolerances& tol = default_tolerances());

// Numerical postcondition checks on `count` random points (seeded). Each
// returns the max entrywise error.
double herglotz_rep_conversion_error(const SchurGRColligation& col,
                                     const HerglotzRepresentation& rep,
                                     std::size_t count, std::uint64_t seed);
double pi_impedance_conversion_error(const SchurGRColligation& col,
                                     const PiNode& node, std::size_t count,
                                     std::uint64_t seed);

}  // namespace agler
