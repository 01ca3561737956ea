#include "agler/decomp.hpp"

#include <string>

#include "agler/error.hpp"
#include "agler/linalg.hpp"

namespace agler {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::kNotDecomposition, what);
}

}  // namespace

DecompositionOfIdentity make_decomposition(std::vector<ComplexMatrix> parts,
                                           DecompositionKind kind,
                                           const Tolerances& tol) {
  if (parts.empty()) fail("no parts");
  const std::size_t n = parts.front().rows();
  ComplexMatrix sum(n, n);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const ComplexMatrix& y = parts[k];
    const std::string label = "part " + std::to_string(k + 1);
    if (!y.is_square() || y.rows() != n) fail(label + ": shape mismatch");
    if (!y.all_finite()) fail(label + ": non-finite entry");
    if (hermitian_residual(y) > tol.structure) fail(label + ": not Hermitian");
    if (n > 0) {
      const HermitianEig e = hermitian_eig(y, tol);
      if (e.values.front() < -tol.psd_slack) fail(label + ": not PSD");
      if (e.values.back() > 1.0 + tol.psd_slack) fail(label + ": not a contraction");
    }
    if (kind == DecompositionKind::kSpectral &&
        max_abs_diff(y * y, y) > tol.structure) {
      fail(label + ": not a projection (Y^2 != Y)");
    }
    sum += y;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(n)) > tol.structure) {
    fail("parts do not sum to the identity");
  }
  return DecompositionOfIdentity(std::move(parts), n, kind);
}

DecompositionOfIdentity DecompositionOfIdentity::as_positive() const {
  return DecompositionOfIdentity(parts_, dim_, DecompositionKind::kPositive);
}

DecompositionOfIdentity DecompositionOfIdentity::padded(std::size_t extra) const {
  std::vector<ComplexMatrix> out;
  out.reserve(parts_.size());
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    ComplexMatrix p(dim_ + extra, dim_ + extra);
    p.set_block(0, 0, parts_[k]);
    if (k == 0) p.set_block(dim_, dim_, ComplexMatrix::identity(extra));
    out.push_back(std::move(p));
  }
  return DecompositionOfIdentity(std::move(out), dim_ + extra, kind_);
}

DecompositionOfIdentity block_decomposition(std::span<const std::size_t> sizes) {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  std::vector<ComplexMatrix> parts;
  std::size_t offset = 0;
  for (std::size_t s : sizes) {
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < s; ++i) p(offset + i, offset + i) = 1.0;
    offset += s;
    parts.push_back(std::move(p));
  }
  return make_decomposition(std::move(parts), DecompositionKind::kSpectral);
}

ComplexMatrix pencil_at(const DecompositionOfIdentity& dec,
                        std::span<const cplx> w) {
  if (w.size() != dec.d()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has " + std::to_string(w.size()) + " coordinates, d = " +
                    std::to_string(dec.d()));
  }
  ComplexMatrix out(dec.dim(), dec.dim());
  for (std::size_t k = 0; k < dec.d(); ++k) out += w[k] * dec.part(k);
  return out;
}

NaimarkDilation naimark_dilate(const DecompositionOfIdentity& dec,
                               const Tolerances& tol) {
  const std::size_t n = dec.dim(), d = dec.d();
  ComplexMatrix iota(d * n, n);
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix q;
    try {
      q = psd_sqrt(dec.part(k), tol);
    } catch (const Error& e) {
      throw Error(ErrorKind::kNotDecomposition, e.what());
    }
    iota.set_block(k * n, 0, q);
  }
  std::vector<std::size_t> sizes(d, n);
  return {block_decomposition(sizes), std::move(iota)};
}

}  // namespace agler
