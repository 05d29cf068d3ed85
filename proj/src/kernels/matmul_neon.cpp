#include <arm_neon.h>

#include "hitbend/fp_kernels.hpp"

namespace hitbend::kernels {

void matmul_neon(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                 std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      uint64x2_t acc = vdupq_n_u64(0);
      for (std::size_t k = 0; k < n; ++k)
        acc = vmlal_u32(acc, vdup_n_u32(a[i * n + k]), vld1_u32(b + k * n + j));
      c[i * n + j] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 0) % p);
      c[i * n + j + 1] = static_cast<std::uint32_t>(vgetq_lane_u64(acc, 1) % p);
    }
    for (; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::uint64_t{a[i * n + k]} * b[k * n + j];
      c[i * n + j] = static_cast<std::uint32_t>(acc % p);
    }
  }
}

}  // namespace hitbend::kernels
