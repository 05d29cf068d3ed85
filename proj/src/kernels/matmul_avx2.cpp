#include <immintrin.h>

#include "hitbend/fp_kernels.hpp"

namespace hitbend::kernels {

// Four 64-bit lanes per step; with p < 2^16 every product is below 2^32, so
// a row of n products cannot overflow a lane and one reduction suffices.
void matmul_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                 std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256i acc = _mm256_setzero_si256();
      for (std::size_t k = 0; k < n; ++k) {
        const __m256i x = _mm256_set1_epi64x(static_cast<long long>(a[i * n + k]));
        const __m128i row = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + k * n + j));
        acc = _mm256_add_epi64(acc, _mm256_mul_epu32(x, _mm256_cvtepu32_epi64(row)));
      }
      alignas(32) std::uint64_t lanes[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
      for (int l = 0; l < 4; ++l) c[i * n + j + static_cast<std::size_t>(l)] = static_cast<std::uint32_t>(lanes[l] % p);
    }
    for (; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::uint64_t{a[i * n + k]} * b[k * n + j];
      c[i * n + j] = static_cast<std::uint32_t>(acc % p);
    }
  }
}

}  // namespace hitbend::kernels
