#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "agler/classes.hpp"
#include "agler/matrix.hpp"
#include "agler/report.hpp"
#include "agler/tolerances.hpp"

namespace agler {

/// Linear pencil V(w) = V0 + sum_k w_k V_k on C^q + C^n, with V0 skew,
/// each V_k PSD and sum_k V_k = [[M11, 0], [0, I_n]].
struct BessmertnyiPencil {
  std::size_t q = 0;
  std::size_t n = 0;
  ComplexMatrix v0;
  std::vector<ComplexMatrix> vk;
  std::vector<std::string> warnings;

  std::size_t d() const { return vk.size(); }
  bool homogeneous() const { return v0.max_abs() == 0.0; }
};

BessmertnyiPencil make_pencil(std::size_t q, ComplexMatrix v0,
                              std::vector<ComplexMatrix> vk,
                              Validation mode = Validation::kStrict,
                              const Tolerances& tol = default_tolerances());

/// V(w) as a full (q + n) square matrix.
ComplexMatrix pencil_matrix(const BessmertnyiPencil& pen, std::span<const cplx> w);

/// Schur complement V11(w) - V12(w) V22(w)^{-1} V21(w).
/// Throws OutsideDomain or SingularBlock.
ComplexMatrix pencil_transfer(const BessmertnyiPencil& pen,
                              std::span<const cplx> w,
                              const Tolerances& tol = default_tolerances());

/// Pencil whose transfer function is w -> F((w - 1)/(w + 1)) for the
/// represented F. The 1-eigenspace of U is split off, T is the Cayley
/// transform of the remaining unitary block, and
///   V0  = [[R - V0'^* T V0', V0'^*(I + T)], [-(I + T)^* V0', -T]]
///   V_k = [[V1^* P_k11 V1, V1^* P_k10], [P_k01 V1, P_k00]]
/// with V = [V1; V0'] in the split basis.
BessmertnyiPencil build_pencil_from_herglotz_rep(
    const HerglotzRepresentation& rep,
    const Tolerances& tol = default_tolerances());

/// max |(I+T)(P00-T)^{-1}(I-P00 T)(I+T)^{-1} - (-T + (I+T)(P00-T)^{-1}(I-T))|.
double check_identity_id1(const ComplexMatrix& t, const ComplexMatrix& p00,
                          const Tolerances& tol = default_tolerances());

/// Congruence by diag(I, S^{-1/2}), S = sum_k V_k22, applied to V0 and every
/// V_k. The transfer function is unchanged and the 22-sum becomes I.
/// Throws SingularBlock when min eig(S) < 1e-10.
BessmertnyiPencil normalize_homogeneous_pencil(
    const BessmertnyiPencil& pen, const Tolerances& tol = default_tolerances());

struct NevanlinnaAtom {
  cplx location;  // on the imaginary axis
  double mass = 0.0;
};

/// f(w) = alpha w + r + sum_j mass_j [z_j / (1 + |z_j|^2) + 1 / (z_j + w)].
struct NevanlinnaData {
  double alpha = 0.0;
  cplx r;
  std::vector<NevanlinnaAtom> atoms;

  cplx evaluate(cplx w) const;
};

/// Atomic Nevanlinna data of the scalar function
///   f(w) = r + w V1^*V1 + V0^*(-T + (I+T)(wI - T)^{-1}(I+T)^*)V0.
/// Diagonalizing T = Q diag(i lambda) Q^* gives atoms at -i lambda_j with
/// masses |(Q^*V0)_j|^2 (1 + lambda_j^2).
/// Throws NotScalar or NotSkewAdjoint.
NevanlinnaData nevanlinna_atoms(const ComplexMatrix& v1, const ComplexMatrix& r,
                                const ComplexMatrix& t, const ComplexMatrix& v0,
                                const Tolerances& tol = default_tolerances());

/// Recovers (V1^*V1, r, T, V0) from a d = 1, q = 1 pencil of the form built
/// by build_pencil_from_herglotz_rep, then extracts the atoms.
/// Throws NotScalar or InvariantViolation.
NevanlinnaData nevanlinna_from_pencil(const BessmertnyiPencil& pen,
                                      const Tolerances& tol = default_tolerances());

/// Structural and sampled class checks; never throws for a well-shaped pencil.
VerificationReport check_pencil_class(const BessmertnyiPencil& pen,
                                      std::uint64_t seed = 0,
                                      std::size_t samples = 64,
                                      const Tolerances& tol = default_tolerances());

}  // namespace agler
