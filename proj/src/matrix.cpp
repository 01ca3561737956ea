#include "agler/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agler/error.hpp"
#include "agler/simd/kernels.hpp"

namespace agler {
namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::kDimensionMismatch,
                "entry count " + std::to_string(data_.size()) +
                    " != rows*cols " + std::to_string(rows * cols));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::kDimensionMismatch, "ragged initializer");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> values) {
  return ComplexMatrix(values.size(), 1,
                       std::vector<cplx>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorKind::kDimensionMismatch, "block out of range");
  }
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(data_.data() + (r0 + i) * cols_ + c0, nc,
                out.data_.data() + i * nc);
  }
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0,
                              const ComplexMatrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
    throw Error(ErrorKind::kDimensionMismatch, "set_block out of range");
  }
  for (std::size_t i = 0; i < m.rows_; ++i) {
    std::copy_n(m.data_.data() + i * m.cols_, m.cols_,
                data_.data() + (r0 + i) * cols_ + c0);
  }
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}
ComplexMatrix operator-(ComplexMatrix a) {
  a *= -1.0;
  return a;
}
ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}
ComplexMatrix operator*(ComplexMatrix a, cplx s) {
  a *= s;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "matmul " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " * " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix c(a.rows(), b.cols());
  const auto& k = simd::kernels();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.data() + i * n;
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx s = a(i, l);
      if (s == cplx(0.0)) continue;
      k.axpy(n, s, b.data() + l * n, ci);
    }
  }
  return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "adjoint_times row mismatch");
  }
  ComplexMatrix c(a.cols(), b.cols());
  const auto& k = simd::kernels();
  const std::size_t n = b.cols();
  for (std::size_t l = 0; l < a.rows(); ++l) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx s = std::conj(a(l, i));
      if (s == cplx(0.0)) continue;
      k.axpy(n, s, b.data() + l * n, c.data() + i * n);
    }
  }
  return c;
}

ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "times_adjoint col mismatch");
  }
  ComplexMatrix c(a.rows(), b.rows());
  const auto& k = simd::kernels();
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      c(i, j) = k.dotc(n, b.data() + j * n, a.data() + i * n);
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "hstack row mismatch");
  }
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "vstack col mismatch");
  }
  ComplexMatrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

ComplexMatrix assemble(const ComplexMatrix& a, const ComplexMatrix& b,
                       const ComplexMatrix& c, const ComplexMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "assemble: block shapes");
  }
  ComplexMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  out.set_block(a.rows(), 0, c);
  out.set_block(a.rows(), a.cols(), d);
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix skew_part(const ComplexMatrix& m) {
  return 0.5 * (m - m.adjoint());
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double hermitian_residual(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "hermitian_residual: not square");
  }
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

double skew_residual(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "skew_residual: not square");
  }
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) + std::conj(m(j, i))));
  return r;
}

double isometry_residual(const ComplexMatrix& m) {
  return max_abs_diff(adjoint_times(m, m), ComplexMatrix::identity(m.cols()));
}

double coisometry_residual(const ComplexMatrix& m) {
  return max_abs_diff(times_adjoint(m, m), ComplexMatrix::identity(m.rows()));
}

double unitary_residual(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  return std::max(isometry_residual(m), coisometry_residual(m));
}

}  // namespace agler
