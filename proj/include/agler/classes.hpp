#pragma once

#include <span>
#include <string>
#include <vector>

#include "agler/decomp.hpp"
#include "agler/matrix.hpp"
#include "agler/tolerances.hpp"

namespace agler {

/// How construction treats a violated invariant: strict throws
/// InvariantViolation, lenient keeps the object and records a warning.
enum class Validation { kStrict, kLenient };

enum class Metric { kUnitary, kIsometric, kCoisometric, kContractive };

/// Givone-Roesser colligation U = [[A, B], [C, D]] : X + U -> X + Y over a
/// spectral decomposition of the state space X (dim n), with input dim q
/// and output dim p.
struct SchurGRColligation {
  ComplexMatrix a, b, c, d;
  DecompositionOfIdentity dec;
  Metric metric = Metric::kUnitary;
  std::vector<std::string> warnings;

  std::size_t state_dim() const { return a.rows(); }
  std::size_t input_dim() const { return b.cols(); }
  std::size_t output_dim() const { return c.rows(); }
  ComplexMatrix colligation_matrix() const { return assemble(a, b, c, d); }
};

SchurGRColligation make_schur_gr(ComplexMatrix a, ComplexMatrix b,
                                 ComplexMatrix c, ComplexMatrix d,
                                 DecompositionOfIdentity dec, Metric metric,
                                 Validation mode = Validation::kStrict,
                                 const Tolerances& tol = default_tolerances());

/// Herglotz colligation over the polydisk, constrained by
/// A^*A = AA^* = I, B = AC^*, D + D^* = CC^* = B^*B.
struct HerglotzDiskColligation {
  ComplexMatrix a, b, c, d;
  DecompositionOfIdentity dec;
  std::vector<std::string> warnings;

  std::size_t state_dim() const { return a.rows(); }
  std::size_t input_dim() const { return b.cols(); }
};

HerglotzDiskColligation make_herglotz_colligation(
    ComplexMatrix a, ComplexMatrix b, ComplexMatrix c, ComplexMatrix d,
    DecompositionOfIdentity dec, Validation mode = Validation::kStrict,
    const Tolerances& tol = default_tolerances());

/// F(z) = R + V^*(U - P(z))^{-1}(U + P(z))V with R skew, U unitary.
struct HerglotzRepresentation {
  ComplexMatrix r, u, v;
  DecompositionOfIdentity dec;
  std::vector<std::string> warnings;

  std::size_t state_dim() const { return u.rows(); }
  std::size_t input_dim() const { return v.cols(); }
};

HerglotzRepresentation make_herglotz_rep(
    ComplexMatrix r, ComplexMatrix u, ComplexMatrix v,
    DecompositionOfIdentity dec, Validation mode = Validation::kStrict,
    const Tolerances& tol = default_tolerances());

enum class PiFlavor { kImpedance, kScattering };

/// Bounded node over the right polyhalfplane with transfer function
/// D + C(Y(w) - A)^{-1}B, Y(w) the pencil of a positive decomposition.
struct PiNode {
  ComplexMatrix a, b, c, d;
  DecompositionOfIdentity dec;
  PiFlavor flavor = PiFlavor::kImpedance;
  std::vector<std::string> warnings;

  std::size_t state_dim() const { return a.rows(); }
  std::size_t input_dim() const { return b.cols(); }
  std::size_t output_dim() const { return c.rows(); }
};

PiNode make_pi_node(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                    ComplexMatrix d, DecompositionOfIdentity dec,
                    PiFlavor flavor, Validation mode = Validation::kStrict,
                    const Tolerances& tol = default_tolerances());

/// Block Hermitian graph Gram [[A+A^*+C^*C, B+C^*D], [B^*+D^*C, D^*D-I]];
/// zero exactly for scattering-conservative nodes.
ComplexMatrix scattering_graph_gram(const ComplexMatrix& a,
                                    const ComplexMatrix& b,
                                    const ComplexMatrix& c,
                                    const ComplexMatrix& d);

// Domain checks; both throw OutsideDomain or DimensionMismatch.
void require_in_polydisk(std::span<const cplx> z, std::size_t d);
void require_in_halfplane(std::span<const cplx> w, std::size_t d);

/// S(z) = D + C(I - P(z)A)^{-1}P(z)B.
ComplexMatrix eval_schur_disk(const SchurGRColligation& col,
                              std::span<const cplx> z,
                              const Tolerances& tol = default_tolerances());

/// F(z) = D + C(I - P(z)A)^{-1}P(z)B for an (id)-colligation.
ComplexMatrix eval_herglotz_disk(const HerglotzDiskColligation& col,
                                 std::span<const cplx> z,
                                 const Tolerances& tol = default_tolerances());

ComplexMatrix eval_herglotz_rep(const HerglotzRepresentation& rep,
                                std::span<const cplx> z,
                                const Tolerances& tol = default_tolerances());

/// D + C(Y(w) - A)^{-1}B.
ComplexMatrix eval_pi_node(const PiNode& node, std::span<const cplx> w,
                           const Tolerances& tol = default_tolerances());

/// Impedance node assembled from a skew T on X, V0 : U -> X and a skew R
/// on U: A = T, B = (I - T)V0, C = V0^*(I + T), D = R - V0^* T V0.
/// Its value at w = (1, ..., 1) is V0^*V0 + R.
PiNode impedance_node_from_triple(const ComplexMatrix& t, const ComplexMatrix& v0,
                                  const ComplexMatrix& r,
                                  DecompositionOfIdentity dec,
                                  const Tolerances& tol = default_tolerances());

// State maps used by the kernel formulas:
//   disk:  H(z) = (I - A P(z))^{-1} B
//   Pi:    H(w) = (Y(w) - A)^{-1} B
ComplexMatrix disk_state_map(const ComplexMatrix& a, const ComplexMatrix& b,
                             const DecompositionOfIdentity& dec,
                             std::span<const cplx> z,
                             const Tolerances& tol = default_tolerances());
ComplexMatrix pi_state_map(const PiNode& node, std::span<const cplx> w,
                           const Tolerances& tol = default_tolerances());

}  // namespace agler
