#include "agler/simd/kernels.hpp"

namespace agler::simd::scalar {

// Written on the real components so the compiler does not route through the
// Annex G (NaN-recovering) complex multiply.

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + (ar * xr - ai * xi),
                y[i].imag() + (ar * xi + ai * xr));
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

namespace {
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace

void rot(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12, cplx c21,
         cplx c22) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xv = x[i], yv = y[i];
    x[i] = mul(c11, xv) + mul(c12, yv);
    y[i] = mul(c21, xv) + mul(c22, yv);
  }
}

}  // namespace agler::simd::scalar
