#include "agler/simd/kernels.hpp"

#ifdef AGLER_HAVE_AVX2_KERNELS

#include <immintrin.h>

#define AGLER_AVX2 __attribute__((target("avx2,fma")))

namespace agler::simd::avx2 {
namespace {

// [re0, im0, re1, im1] -> [im0, re0, im1, re1]
AGLER_AVX2 inline __m256d swap_pairs(__m256d v) {
  return _mm256_permute_pd(v, 0b0101);
}

// Two complex products a * x with a broadcast.
AGLER_AVX2 inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swap_pairs(x)));
}

AGLER_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Sum of even lanes minus sum of odd lanes.
AGLER_AVX2 inline double hsum_alt(__m256d v) {
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  return hsum(_mm256_mul_pd(v, sign));
}

inline const double* dp(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

AGLER_AVX2 void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(yv, cmul_bcast(ar, ai, xv)));
  }
  if (i < n) scalar::axpy(n - i, a, x + i, y + i);
}

AGLER_AVX2 cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, swap_pairs(yv), cross);
  }
  cplx out(hsum(same), hsum_alt(cross));
  if (i < n) out += scalar::dotc(n - i, x + i, y + i);
  return out;
}

AGLER_AVX2 cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, swap_pairs(yv), cross);
  }
  cplx out(hsum_alt(same), hsum(cross));
  if (i < n) out += scalar::dotu(n - i, x + i, y + i);
  return out;
}

AGLER_AVX2 void rot(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12,
                    cplx c21, cplx c22) {
  const __m256d a11r = _mm256_set1_pd(c11.real()), a11i = _mm256_set1_pd(c11.imag());
  const __m256d a12r = _mm256_set1_pd(c12.real()), a12i = _mm256_set1_pd(c12.imag());
  const __m256d a21r = _mm256_set1_pd(c21.real()), a21i = _mm256_set1_pd(c21.imag());
  const __m256d a22r = _mm256_set1_pd(c22.real()), a22i = _mm256_set1_pd(c22.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    const __m256d nx = _mm256_add_pd(cmul_bcast(a11r, a11i, xv),
                                     cmul_bcast(a12r, a12i, yv));
    const __m256d ny = _mm256_add_pd(cmul_bcast(a21r, a21i, xv),
                                     cmul_bcast(a22r, a22i, yv));
    _mm256_storeu_pd(dp(x + i), nx);
    _mm256_storeu_pd(dp(y + i), ny);
  }
  if (i < n) scalar::rot(n - i, x + i, y + i, c11, c12, c21, c22);
}

}  // namespace agler::simd::avx2

#endif  // AGLER_HAVE_AVX2_KERNELS
