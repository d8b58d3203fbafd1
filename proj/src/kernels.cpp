#include "qaho/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qaho::kernels {

namespace {

const Kernels& resolve() {
  const char* want = std::getenv("QAHO_KERNELS");
  if (want != nullptr) {
    if (std::strcmp(want, "scalar") == 0) return scalar_kernels();
    if (std::strcmp(want, "avx2") == 0 && avx2_kernels() != nullptr &&
        cpu_supports_avx2())
      return *avx2_kernels();
    // Unknown or unsupported request: fall through to autodetection.
  }
  if (avx2_kernels() != nullptr && cpu_supports_avx2()) return *avx2_kernels();
  return scalar_kernels();
}

}  // namespace

const Kernels& active() {
  static const Kernels& k = resolve();
  return k;
}

}  // namespace qaho::kernels
