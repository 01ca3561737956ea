#pragma once

// Complex double inner-loop kernels. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant. The active variant is
// chosen once at first use from CPUID; setting AGLER_SIMD=scalar in the
// environment pins the scalar path.
//
// Complex arrays are interleaved (re, im) pairs, i.e. the object
// representation of std::complex<double>.

#include <complex>
#include <cstddef>

namespace agler::simd {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

/// The ISA the dispatching entry points below forward to.
Isa active_isa();

struct KernelTable {
  // y[i] += a * x[i]
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // sum conj(x[i]) * y[i]
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum x[i] * y[i]
  cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
  // (x, y) <- (c11 x + c12 y, c21 x + c22 y)
  void (*rot)(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12, cplx c21,
              cplx c22);
};

/// Kernel table for a specific ISA. Requesting kAvx2 when it is unavailable
/// returns the scalar table.
const KernelTable& kernels_for(Isa isa);

/// Kernel table for active_isa().
const KernelTable& kernels();

inline void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  kernels().axpy(n, a, x, y);
}
inline cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return kernels().dotc(n, x, y);
}
inline cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
  return kernels().dotu(n, x, y);
}
inline void rot(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12, cplx c21,
                cplx c22) {
  kernels().rot(n, x, y, c11, c12, c21, c22);
}

namespace scalar {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
cplx dotu(std::size_t n, const cplx* x, const cplx* y);
void rot(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12, cplx c21,
         cplx c22);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define AGLER_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
cplx dotu(std::size_t n, const cplx* x, const cplx* y);
void rot(std::size_t n, cplx* x, cplx* y, cplx c11, cplx c12, cplx c21,
         cplx c22);
}  // namespace avx2
#endif

}  // namespace agler::simd
