#pragma once

// Dense arithmetic kernels behind Matrix. Every kernel has a scalar
// reference implementation and, where the target allows it, SIMD variants
// selected once at runtime. Variants accumulate in the same order as the
// scalar code, so results are bitwise identical across backends.

#include <cstddef>
#include <string_view>

namespace margulis::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend backend);

/// Backend picked from the running CPU on first use.
Backend active_backend();

/// True when `backend` is compiled in and supported by the running CPU.
bool backend_available(Backend backend);

// C (m x n) = A (m x k) * B (k x n), all row-major and densely packed.
// C must not alias A or B.
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c);

// C (m x n) = alpha * A + beta * B, elementwise; C may alias A or B.
void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c);

namespace scalar {
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c);
void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c);
}  // namespace scalar

#if defined(MARGULIS_HAVE_AVX2_KERNELS)
namespace avx2 {
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c);
void axpby(std::size_t count, double alpha, const double* a, double beta,
           const double* b, double* c);
}  // namespace avx2
#endif

}  // namespace margulis::kernels
