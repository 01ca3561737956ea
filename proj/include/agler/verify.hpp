#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "agler/bessmertnyi.hpp"
#include "agler/classes.hpp"
#include "agler/matrix.hpp"
#include "agler/report.hpp"
#include "agler/tolerances.hpp"

namespace agler {

enum class TupleKind { kStrictContraction, kStrictlyAccretive };

/// Commuting d-tuple of m x m matrices.
struct CommutingTuple {
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<ComplexMatrix> mats;
  TupleKind kind = TupleKind::kStrictContraction;
  double margin = 0.0;
};

/// Validates commutators (<= 1e-10) and the contraction / accretivity
/// margin. Throws InvariantViolation, DimensionMismatch, BadParams.
CommutingTuple make_commuting_tuple(std::vector<ComplexMatrix> mats,
                                    TupleKind kind, double margin,
                                    const Tolerances& tol = default_tolerances());

/// T_k = Q D_k Q^* with one Haar Q. Throws BadParams unless 0 < margin < 1.
CommutingTuple random_commuting_tuple(std::size_t d, std::size_t m,
                                      TupleKind kind, double margin,
                                      std::uint64_t seed);

double commutator_residual(const CommutingTuple& t);

using FunctionEvaluator = std::function<ComplexMatrix(std::span<const cplx>)>;
/// (omega, zeta) -> the d kernels K_k(omega, zeta).
using KernelEvaluator = std::function<std::vector<ComplexMatrix>(
    std::span<const cplx>, std::span<const cplx>)>;
using Kernel = std::function<ComplexMatrix(std::span<const cplx>, std::span<const cplx>)>;

// K_k(w, z) = H(w)^* P_k H(z) with H(z) = (I - A P(z))^{-1} B.
KernelEvaluator kernels_from_gr(const SchurGRColligation& col,
                                const Tolerances& tol = default_tolerances());
KernelEvaluator kernels_from_herglotz(const HerglotzDiskColligation& col,
                                      const Tolerances& tol = default_tolerances());
// K_k(z, w) = H(z)^* Y_k H(w) with H(w) = (Y(w) - A)^{-1} B.
KernelEvaluator kernels_from_pi_node(const PiNode& node,
                                     const Tolerances& tol = default_tolerances());
// K_k(z, w) = H(z)^* V_k H(w) with H(w) = [I; -V22(w)^{-1} V21(w)].
KernelEvaluator kernels_from_pencil(const BessmertnyiPencil& pen,
                                    const Tolerances& tol = default_tolerances());

FunctionEvaluator evaluator(const SchurGRColligation& col,
                            const Tolerances& tol = default_tolerances());
FunctionEvaluator evaluator(const HerglotzDiskColligation& col,
                            const Tolerances& tol = default_tolerances());
FunctionEvaluator evaluator(const PiNode& node,
                            const Tolerances& tol = default_tolerances());
FunctionEvaluator evaluator(const BessmertnyiPencil& pen,
                            const Tolerances& tol = default_tolerances());

enum class AglerFlavor { kDiskSchur, kDiskHerglotz, kPiSchur, kPiHerglotz };

using PointPair = std::pair<Point, Point>;

/// max over pairs of |LHS(w, z) - sum_k weight_k(w, z) K_k(w, z)| with
///   disk_schur    I - F(w)^*F(z),  weight 1 - conj(w_k) z_k
///   disk_herglotz F(w)^* + F(z),   weight 1 - conj(w_k) z_k
///   pi_schur      I - F(w)^*F(z),  weight conj(w_k) + z_k
///   pi_herglotz   F(w)^* + F(z),   weight conj(w_k) + z_k
/// Throws DomainMismatch when a pair is outside the flavor's domain.
double agler_residual(const FunctionEvaluator& f, const KernelEvaluator& kernels,
                      const std::vector<PointPair>& pairs, AglerFlavor flavor);

/// Min eigenvalue of the Hermitian part of the block Gram [K(z_i, z_j)].
double kernel_gram_psd(const Kernel& k, const std::vector<Point>& points,
                       const Tolerances& tol = default_tolerances());
/// Kernel number `index` of an evaluator.
Kernel kernel_component(const KernelEvaluator& kernels, std::size_t index);

/// S(T) = D(x)I + (C(x)I)(I - P(T)(A(x)I))^{-1} P(T)(B(x)I), P(T) = sum P_k (x) T_k.
/// Throws WrongTupleKind, DimensionMismatch.
ComplexMatrix eval_on_tuple(const SchurGRColligation& col, const CommutingTuple& t,
                            const Tolerances& tol = default_tolerances());
ComplexMatrix eval_on_tuple(const HerglotzDiskColligation& col,
                            const CommutingTuple& t,
                            const Tolerances& tol = default_tolerances());
/// f(T) = D(x)I + (C(x)I)(Y(T) - A(x)I)^{-1}(B(x)I) on an accretive tuple.
ComplexMatrix eval_on_tuple(const PiNode& node, const CommutingTuple& t,
                            const Tolerances& tol = default_tolerances());

struct TaylorResult {
  ComplexMatrix value;
  double tail_bound = 0.0;  // |C||B| rho^{deg+1} / (1 - rho)
  std::size_t monomials = 0;
};

/// Sum over |n| <= degree of S_n (x) T^n with the coefficients S_n expanded
/// monomial by monomial. Throws DegreeTooSmall when tail_bound > tail_tol.
TaylorResult taylor_eval_on_tuple(const SchurGRColligation& col,
                                  const CommutingTuple& t, std::size_t degree,
                                  double tail_tol = 1e-5);
TaylorResult taylor_eval_on_tuple(const HerglotzDiskColligation& col,
                                  const CommutingTuple& t, std::size_t degree,
                                  double tail_tol = 1e-5);

struct GrowthResult {
  ComplexMatrix limit;        // f(t_max e) / t_max
  std::vector<double> norms;  // max |f(t e) / t| along the grid
};

/// Throws BadParams unless the grid increases and ends at >= 1e4.
GrowthResult growth_limit(const FunctionEvaluator& f, std::size_t d,
                          const std::vector<double>& grid);
std::vector<double> default_growth_grid();

/// max_w |(Y(w) - A)^{-1}| min_j Re w_j - 1 against 1e-9.
/// Throws NotDissipative when A + A^* has an eigenvalue above psd_slack.
VerificationReport resolvent_bound_check(const PiNode& node,
                                         const std::vector<Point>& samples,
                                         const Tolerances& tol = default_tolerances());

// Random point pairs for the residual checks.
std::vector<PointPair> polydisk_pairs(std::size_t count, std::size_t d,
                                      std::uint64_t seed, double radius = 0.9);
std::vector<PointPair> halfplane_pairs(std::size_t count, std::size_t d,
                                       std::uint64_t seed);

// Suites used by the command line and the acceptance run.
VerificationReport verify_kernels(const SchurGRColligation& col, std::uint64_t seed,
                                  std::size_t pairs = 100,
                                  const Tolerances& tol = default_tolerances());
VerificationReport verify_kernels(const HerglotzDiskColligation& col,
                                  std::uint64_t seed, std::size_t pairs = 100,
                                  const Tolerances& tol = default_tolerances());
VerificationReport verify_kernels(const PiNode& node, std::uint64_t seed,
                                  std::size_t pairs = 100,
                                  const Tolerances& tol = default_tolerances());
VerificationReport verify_kernels(const BessmertnyiPencil& pen, std::uint64_t seed,
                                  std::size_t pairs = 100,
                                  const Tolerances& tol = default_tolerances());

VerificationReport verify_tuples(const SchurGRColligation& col, std::uint64_t seed,
                                 std::size_t count = 200,
                                 const Tolerances& tol = default_tolerances());
VerificationReport verify_tuples(const HerglotzDiskColligation& col,
                                 std::uint64_t seed, std::size_t count = 200,
                                 const Tolerances& tol = default_tolerances());
VerificationReport verify_tuples(const PiNode& node, std::uint64_t seed,
                                 std::size_t count = 200,
                                 const Tolerances& tol = default_tolerances());

/// Pencils: limit against (sum_k V_k)_11 within 1e-5. Nodes: limit 0.
VerificationReport verify_growth(const BessmertnyiPencil& pen);
VerificationReport verify_growth(const PiNode& node);

}  // namespace agler
