#include <cstdlib>
#include <cstring>

#include "agler/simd/kernels.hpp"

namespace agler::simd {
namespace {

const KernelTable kScalarTable{&scalar::axpy, &scalar::dotc, &scalar::dotu,
                               &scalar::rot};
#ifdef AGLER_HAVE_AVX2_KERNELS
const KernelTable kAvx2Table{&avx2::axpy, &avx2::dotc, &avx2::dotu,
                             &avx2::rot};
#endif

Isa detect() {
  const char* forced = std::getenv("AGLER_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return Isa::kScalar;
  }
  return avx2_available() ? Isa::kAvx2 : Isa::kScalar;
}

}  // namespace

const char* isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#ifdef AGLER_HAVE_AVX2_KERNELS
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& kernels_for(Isa isa) {
#ifdef AGLER_HAVE_AVX2_KERNELS
  if (isa == Isa::kAvx2 && avx2_available()) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

const KernelTable& kernels() {
  static const KernelTable& table = kernels_for(active_isa());
  return table;
}

}  // namespace agler::simd
