// AVX2+FMA lane. Compiled without global -mavx2: every function carries
// target("avx2,fma") and is reachable only after cpu_supports_avx2().
//
// A std::complex<double> array is an interleaved [re,im] stream; one __m256d
// holds two complex values. Multiplication uses the fmaddsub/fmsubadd idiom.

#include "qaho/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace qaho::kernels {
namespace {

#define QAHO_AVX2 __attribute__((target("avx2,fma")))

// [x0r,x0i,x1r,x1i] -> [x0i,x0r,x1i,x1r]
QAHO_AVX2 inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// (ar + i*ai) * v for two packed complex values; ar/ai are broadcast lanes.
QAHO_AVX2 inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swap_ri(v)));
}

QAHO_AVX2 void caxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

QAHO_AVX2 void cscal_avx2(std::size_t n, cplx a, cplx* x) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  double* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul_broadcast(ar, ai, xv));
  }
  for (; i < n; ++i) x[i] *= a;
}

QAHO_AVX2 inline cplx reduce_c(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  alignas(16) double out[2];
  _mm_store_pd(out, _mm_add_pd(lo, hi));
  return {out[0], out[1]};
}

QAHO_AVX2 cplx cdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);       // [xr,xr,...]
    const __m256d xi = _mm256_permute_pd(xv, 0xF);  // [xi,xi,...]
    // conj(x)*y: even xr*yr + xi*yi, odd xr*yi - xi*yr
    acc = _mm256_add_pd(
        acc, _mm256_fmsubadd_pd(xr, yv, _mm256_mul_pd(xi, swap_ri(yv))));
  }
  cplx r = reduce_c(acc);
  for (; i < n; ++i) r += std::conj(x[i]) * y[i];
  return r;
}

QAHO_AVX2 cplx cdotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xr = _mm256_movedup_pd(xv);
    const __m256d xi = _mm256_permute_pd(xv, 0xF);
    acc = _mm256_add_pd(acc, cmul_broadcast(xr, xi, yv));
  }
  cplx r = reduce_c(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

QAHO_AVX2 void cgemm_avx2(std::size_t m, std::size_t k, std::size_t n,
                          const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{0.0, 0.0}) continue;
      caxpy_avx2(n, aip, b + p * n, c + i * n);
    }
}

QAHO_AVX2 void apply_pairs_avx2(cplx* amps, std::size_t dim, std::size_t mask,
                                const cplx* u) {
  if (mask < 2) {  // adjacent pairs; one complex per block
    for (std::size_t i = 0; i < dim; i += 2) {
      const cplx a = amps[i];
      const cplx b = amps[i + 1];
      amps[i] = u[0] * a + u[1] * b;
      amps[i + 1] = u[2] * a + u[3] * b;
    }
    return;
  }
  const __m256d u00r = _mm256_set1_pd(u[0].real()), u00i = _mm256_set1_pd(u[0].imag());
  const __m256d u01r = _mm256_set1_pd(u[1].real()), u01i = _mm256_set1_pd(u[1].imag());
  const __m256d u10r = _mm256_set1_pd(u[2].real()), u10i = _mm256_set1_pd(u[2].imag());
  const __m256d u11r = _mm256_set1_pd(u[3].real()), u11i = _mm256_set1_pd(u[3].imag());
  double* d = reinterpret_cast<double*>(amps);
  for (std::size_t base = 0; base < dim; base += 2 * mask)
    for (std::size_t off = 0; off < mask; off += 2) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + mask;
      const __m256d av = _mm256_loadu_pd(d + 2 * i0);
      const __m256d bv = _mm256_loadu_pd(d + 2 * i1);
      const __m256d na = _mm256_add_pd(cmul_broadcast(u00r, u00i, av),
                                       cmul_broadcast(u01r, u01i, bv));
      const __m256d nb = _mm256_add_pd(cmul_broadcast(u10r, u10i, av),
                                       cmul_broadcast(u11r, u11i, bv));
      _mm256_storeu_pd(d + 2 * i0, na);
      _mm256_storeu_pd(d + 2 * i1, nb);
    }
}

#undef QAHO_AVX2

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{"avx2",      caxpy_avx2, cscal_avx2,
                         cdotc_avx2,  cdotu_avx2, cgemm_avx2,
                         apply_pairs_avx2};
  return &k;
}

bool cpu_supports_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace qaho::kernels

#else  // non-x86: only the scalar lane exists

namespace qaho::kernels {
const Kernels* avx2_kernels() { return nullptr; }
bool cpu_supports_avx2() { return false; }
}  // namespace qaho::kernels

#endif
