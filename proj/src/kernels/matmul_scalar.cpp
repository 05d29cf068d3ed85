#include <cstdlib>
#include <string_view>

#include "hitbend/fp_kernels.hpp"

namespace hitbend::kernels {

void matmul_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                   std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = (acc + std::uint64_t{a[i * n + k]} * b[k * n + j]) % p;
      c[i * n + j] = static_cast<std::uint32_t>(acc);
    }
}

MatmulFn select_matmul(std::uint32_t p) {
  const char* forced = std::getenv("HITBEND_KERNEL");
  if (forced != nullptr && std::string_view(forced) == "scalar") return matmul_scalar;
  if (p >= (1U << 16)) return matmul_scalar;
#if defined(HITBEND_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return matmul_avx2;
#endif
#if defined(HITBEND_HAVE_NEON)
  return matmul_neon;
#endif
  return matmul_scalar;
}

std::string kernel_name(MatmulFn fn) {
#if defined(HITBEND_HAVE_AVX2)
  if (fn == matmul_avx2) return "avx2";
#endif
#if defined(HITBEND_HAVE_NEON)
  if (fn == matmul_neon) return "neon";
#endif
  return fn == matmul_scalar ? "scalar" : "unknown";
}

}  // namespace hitbend::kernels
