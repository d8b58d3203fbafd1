// Reference lane: straightforward loops, no intrinsics. The other lanes are
// tested against this one.

#include "qaho/kernels.hpp"

namespace qaho::kernels {
namespace {

void caxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void cscal_scalar(std::size_t n, cplx a, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

cplx cdotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void cgemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                  const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + p * n;
      cplx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
}

void apply_pairs_scalar(cplx* amps, std::size_t dim, std::size_t mask,
                        const cplx* u) {
  for (std::size_t base = 0; base < dim; base += 2 * mask)
    for (std::size_t off = 0; off < mask; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + mask;
      const cplx a = amps[i0];
      const cplx b = amps[i1];
      amps[i0] = u[0] * a + u[1] * b;
      amps[i1] = u[2] * a + u[3] * b;
    }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",      caxpy_scalar, cscal_scalar,
                         cdotc_scalar,  cdotu_scalar, cgemm_scalar,
                         apply_pairs_scalar};
  return k;
}

}  // namespace qaho::kernels
