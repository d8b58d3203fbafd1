#pragma once
// Low-level complex-array kernels with runtime lane dispatch.
//
// Lanes: "scalar" is the portable reference; "avx2" is compiled per-function
// with target("avx2,fma") and selected only when the CPU reports support.
// A NEON lane would register alongside avx2 here; none ships because no ARM
// hardware was available to equivalence-test it.
//
// Lane selection: QAHO_KERNELS=scalar|avx2 overrides autodetection. The
// active lane is resolved once, before first use, and never changes.
//
// Results across lanes agree to ~1e-13 relative (FMA and reduction-order
// effects), not bitwise; the equivalence tests pin that bound.

#include <complex>
#include <cstddef>

namespace qaho::kernels {

using cplx = std::complex<double>;

struct Kernels {
  const char* name;
  // y[i] += a * x[i]
  void (*caxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // x[i] *= a
  void (*cscal)(std::size_t n, cplx a, cplx* x);
  // sum_i conj(x[i]) * y[i]
  cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i x[i] * y[i]
  cplx (*cdotu)(std::size_t n, const cplx* x, const cplx* y);
  // C = A*B, row-major, C is m x n and is overwritten
  void (*cgemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                const cplx* b, cplx* c);
  // In-place 2x2 update on amplitude pairs split by `mask` (a power of two):
  //   (amps[i], amps[i|mask]) <- u * (amps[i], amps[i|mask])
  // for every index i with (i & mask) == 0. u is row-major [u00 u01 u10 u11].
  void (*apply_pairs)(cplx* amps, std::size_t dim, std::size_t mask,
                      const cplx* u);
};

const Kernels& scalar_kernels();

// Null when the binary was built without the AVX2 lane.
const Kernels* avx2_kernels();

bool cpu_supports_avx2();

// Resolved lane (env override, else autodetect, else scalar).
const Kernels& active();

}  // namespace qaho::kernels
