#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace agler {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Zero-sized dimensions are valid and
/// behave as empty blocks in every operation.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix scalar(cplx value) { return ComplexMatrix{{value}}; }
  static ComplexMatrix column(std::span<const cplx> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  const std::vector<cplx>& values() const { return data_; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m);
  ComplexMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  /// max |entry|; 0 for an empty matrix.
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
/// Matrix product; dispatches to the SIMD kernels.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// a^* b without forming a^*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
/// a b^* without forming b^*.
ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);
/// [[a, b], [c, d]]; block shapes must agree.
ComplexMatrix assemble(const ComplexMatrix& a, const ComplexMatrix& b,
                       const ComplexMatrix& c, const ComplexMatrix& d);

/// (M + M^*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// (M - M^*) / 2
ComplexMatrix skew_part(const ComplexMatrix& m);

/// max |a - b|; a and b must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |M - M^*|
double hermitian_residual(const ComplexMatrix& m);
/// max |M + M^*|
double skew_residual(const ComplexMatrix& m);
/// max(|M^*M - I|, |MM^* - I|)
double unitary_residual(const ComplexMatrix& m);
double isometry_residual(const ComplexMatrix& m);    // |M^*M - I|
double coisometry_residual(const ComplexMatrix& m);  // |MM^* - I|

}  // namespace agler
