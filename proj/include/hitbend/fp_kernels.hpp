#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace hitbend::kernels {

/// C = A * B mod p for row-major n x n matrices with entries in [0, p).
using MatmulFn = void (*)(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                          std::uint32_t p);

void matmul_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                   std::uint32_t p);
#if defined(HITBEND_HAVE_AVX2)
/// Requires p < 2^16.
void matmul_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                 std::uint32_t p);
#endif
#if defined(HITBEND_HAVE_NEON)
/// Requires p < 2^16.
void matmul_neon(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* c, std::size_t n,
                 std::uint32_t p);
#endif

/// Best kernel supported by this CPU for modulus p. HITBEND_KERNEL=scalar
/// forces the reference path.
MatmulFn select_matmul(std::uint32_t p);
std::string kernel_name(MatmulFn fn);

}  // namespace hitbend::kernels
